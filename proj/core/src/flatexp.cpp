#include "renorm/flatexp.hpp"

#include <cmath>

namespace renorm {

double flat_exp_eval(const flat_exp_map& m, double x, bool real_extension) {
    if (x == m.a) {
        if (!real_extension) fail(errc::degeneracy, "evaluation at the singular point");
        return 0.0;
    }
    double d = x - m.a;
    return std::exp(-m.c / (d * d)); // underflows to 0 near a, as the extension wants
}

cplx flat_exp_eval(const flat_exp_map& m, cplx z, bool real_extension) {
    if (z.imag() == 0.0) return {flat_exp_eval(m, z.real(), real_extension), 0.0};
    cplx d = z - m.a;
    return std::exp(-m.c / (d * d));
}

cplx flat_exp_derivative(const flat_exp_map& m, cplx z) {
    cplx d = z - m.a;
    if (d == 0.0) fail(errc::degeneracy, "derivative at the singular point");
    return flat_exp_eval(m, z) * 2.0 * m.c / (d * d * d);
}

flat_fixed_points find_fixed_points(const flat_exp_map& m) {
    if (!(m.a > 0) || !(m.c > 0)) fail(errc::structure, "parameters must be positive");
    auto g = [&](double x) { return flat_exp_eval(m, x, true) - x; };
    // g < 0 just right of a and again at 1; the EW-like regime has a positive
    // bump in between giving the pair b_f < z0
    const int n = 4096;
    double xs = m.a, xe = 1.0;
    double prev = g(xs + (xe - xs) * 1e-9);
    std::vector<double> roots;
    double prev_x = xs + (xe - xs) * 1e-9;
    for (int i = 1; i <= n; ++i) {
        double x = xs + (xe - xs) * double(i) / n;
        double v = g(x);
        if ((prev < 0) != (v < 0)) {
            double a = prev_x, b = x, fa = prev;
            for (int k = 0; k < 200; ++k) {
                double mid = 0.5 * (a + b);
                if (mid == a || mid == b) break;
                double fm = g(mid);
                if ((fa < 0) == (fm < 0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        prev = v;
        prev_x = x;
    }
    if (roots.size() != 2)
        fail(errc::structure,
             "expected a repelling/attracting fixed-point pair in (a, 1); found " +
                 std::to_string(roots.size()) + " roots");
    flat_fixed_points fp;
    fp.b_f = roots[0];
    fp.z0 = roots[1];
    fp.mult_b = std::abs(flat_exp_derivative(m, cplx(fp.b_f, 0)).real());
    fp.mult_z0 = std::abs(flat_exp_derivative(m, cplx(fp.z0, 0)).real());
    if (!(fp.mult_b > 1.0 && fp.mult_z0 < 1.0))
        fail(errc::structure, "fixed points do not split repelling/attracting");
    return fp;
}

std::vector<cplx> preimages_of_point(const flat_exp_map& m, cplx v,
                                     const std::vector<int>& branch_indices) {
    if (v == 0.0) fail(errc::value, "0 is an omitted value");
    std::vector<cplx> out;
    const double two_pi = 6.283185307179586476925286766559;
    for (int k : branch_indices) {
        cplx w = std::log(v) + cplx(0.0, two_pi * k);
        if (std::abs(w) < 1e-300) fail(errc::degeneracy, "degenerate branch: Log v + 2 pi i k = 0");
        cplx s = std::sqrt(-m.c / w);
        out.push_back(m.a + s);
        out.push_back(m.a - s);
    }
    return out;
}

} // namespace renorm
