#include "renorm/gdyn.hpp"

#include <cmath>

namespace renorm {

double g_map::operator()(double x) const {
    int p = sol.type.period();
    double y = x / sol.tau;
    for (int i = 0; i < p - 1; ++i) y = eval_H_ext(sol.map, sol.tau, p, y);
    return y;
}

cplx g_map::operator()(cplx z) const {
    int p = sol.type.period();
    cplx y = z / sol.tau;
    for (int i = 0; i < p - 1; ++i) y = eval_H(sol.map, y);
    return y;
}

g_map build_G(const solution_d& sol) {
    int p = sol.type.period();
    // analyticity condition: H^n([0, 1/tau]) stays clear of the critical
    // point for n <= p-2
    double x0 = sol.map.x0;
    for (int n = 0; n <= p - 2; ++n) {
        double lo = 1e300, hi = -1e300;
        for (int i = 0; i <= 256; ++i) {
            double y = double(i) / 256.0 / sol.tau;
            for (int k = 0; k < n; ++k) y = eval_H(sol.map, y);
            lo = std::min(lo, y);
            hi = std::max(hi, y);
        }
        if (n >= 1 && lo <= x0 && x0 <= hi)
            fail(errc::degeneracy, "intermediate orbit crosses the critical point");
    }
    g_map g{sol, 0, 0};
    g.fixed_point_defect = std::abs(g(x0) - x0);
    double sup = 0;
    for (int i = 0; i <= 64; ++i) {
        double x = double(i) / 64.0;
        sup = std::max(sup, std::abs(eval_H(sol.map, x) / sol.tau - eval_H(sol.map, g(x))));
    }
    g.identity_defect = sup;
    return g;
}

multiplier_result multiplier_check(const solution_d& sol) {
    g_map g = build_G(sol);
    double x0 = sol.map.x0;
    double h = 1e-4;
    if (x0 - 2 * h <= 0 || x0 + 2 * h >= 1)
        fail(errc::domain, "stencil leaves the domain");
    double d = (-g(x0 + 2 * h) + 8 * g(x0 + h) - 8 * g(x0 - h) + g(x0 - 2 * h)) / (12 * h);
    multiplier_result r;
    r.measured = std::abs(d);
    r.predicted = std::exp(-std::log(sol.tau) / sol.map.ell);
    return r;
}

parabolic_result parabolic_fit(const std::function<double(double)>& g2, double x0,
                               double delta_lo, double delta_hi) {
    // multiplier guard: the cubic form only makes sense near parabolicity
    {
        double h = 1e-4;
        double d =
            (-g2(x0 + 2 * h) + 8 * g2(x0 + h) - 8 * g2(x0 - h) + g2(x0 - 2 * h)) / (12 * h);
        if (std::abs(d - 1.0) > 0.05)
            fail(errc::not_parabolic, "(G^2)'(x0) = " + std::to_string(d) +
                                          " too far from 1 for a parabolic fit");
    }
    const int n_per_side = 12;
    double num = 0, den = 0;
    std::vector<double> ds, ys;
    for (int side = -1; side <= 1; side += 2) {
        for (int k = 0; k < n_per_side; ++k) {
            double t = double(k) / (n_per_side - 1);
            double d = side * delta_lo * std::pow(delta_hi / delta_lo, t);
            double y = g2(x0 + d) - (x0 + d);
            num += y * d * d * d;
            den += d * d * d * d * d * d;
            ds.push_back(d);
            ys.push_back(y);
        }
    }
    parabolic_result r;
    r.epsilon = -num / den;
    double ss = 0;
    for (size_t i = 0; i < ds.size(); ++i) {
        double fit = -r.epsilon * ds[i] * ds[i] * ds[i];
        ss += (ys[i] - fit) * (ys[i] - fit);
    }
    r.residual = std::sqrt(ss / double(ds.size()));
    r.degenerate = std::abs(r.epsilon) < 1e-10;
    return r;
}

double abel_residual(const solution_d& sol, const std::vector<cplx>& grid) {
    g_map g = build_G(sol);
    double logtau = std::log(sol.tau);
    double sup = 0;
    for (cplx z : grid) {
        cplx hz = z.imag() == 0.0 ? cplx(eval_H_ext(sol.map, sol.tau, sol.type.period(),
                                                    z.real()))
                                  : eval_H(sol.map, z);
        cplx hgz;
        if (z.imag() == 0.0)
            hgz = cplx(eval_H_ext(sol.map, sol.tau, sol.type.period(), g(z.real())));
        else
            hgz = eval_H(sol.map, g(z));
        if (z.imag() == 0.0 && (hz.real() <= 0.0 || hgz.real() <= 0.0))
            fail(errc::sampling, "H <= 0 on the real grid");
        cplx diff = std::log(hgz) - std::log(hz) + logtau;
        if (std::abs(diff.imag()) > 3.141592653589793)
            fail(errc::branch, "log branch mismatch along the grid");
        sup = std::max(sup, std::abs(diff));
    }
    return sup;
}

cplx inverse_branch_P(const solution_d& sol, int sign, cplx w) {
    if (sign != 1 && sign != -1) fail(errc::value, "branch sign must be +-1");
    const series_d& E = sol.map.E;
    cplx target = double(sign) * std::exp(w / sol.map.ell);

    // range guard on the magnitude reachable within the trusted window
    double m = safe_eval_margin(sol.map);
    double top = eval_unchecked(E, E.lo - m);
    double bot = eval_unchecked(E, E.hi + m);
    if (std::abs(target) > std::max(std::abs(top), std::abs(bot)) + 1e-12)
        fail(errc::range, "target outside the range of E");

    // real seed by bisection on the real part, then complex Newton
    double tr = target.real();
    double a = E.lo - m, b = E.hi + m;
    double fa = eval_unchecked(E, a);
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (a + b);
        double fm = eval_unchecked(E, mid);
        if ((fa >= tr) == (fm >= tr)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    series_d dE = derivative(E);
    cplx z(0.5 * (a + b), 0.0);
    for (int i = 0; i < 60; ++i) {
        cplx f = eval_unchecked(E, z) - target;
        if (std::abs(f) < 1e-14 * std::max(1.0, std::abs(target))) break;
        cplx d = eval_unchecked(dE, z);
        if (std::abs(d) < 1e-14) fail(errc::degeneracy, "E' vanished during inversion");
        z -= f / d;
    }
    if (std::abs(eval_unchecked(E, z) - target) > 1e-12 * std::max(1.0, std::abs(target)))
        fail(errc::range, "inverse branch did not converge");
    return z;
}

} // namespace renorm
