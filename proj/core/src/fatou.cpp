#include "renorm/fatou.hpp"

#include <cmath>

#include "renorm/linsolve.hpp"

namespace renorm {

fatou_coefficients fatou_fit_log_samples(const std::function<double(double)>& logH,
                                         double x0, double delta_lo, double delta_hi,
                                         int per_side) {
    std::vector<double> xs, ys;
    for (int side = -1; side <= 1; side += 2) {
        for (int k = 0; k < per_side; ++k) {
            double t = double(k) / (per_side - 1);
            double d = side * delta_lo * std::pow(delta_hi / delta_lo, t);
            double y = logH(x0 + d);
            if (!std::isfinite(y)) fail(errc::sampling, "log H not finite at a fit sample");
            xs.push_back(d);
            ys.push_back(y);
        }
    }
    // normal equations accumulated in double-double: the basis columns span
    // ~sixteen orders of magnitude across the window
    auto basis = [](double d, int i) -> double {
        switch (i) {
            case 0: return 1.0 / (d * d);
            case 1: return 1.0 / d;
            case 2: return std::log(std::abs(d));
            default: return 1.0;
        }
    };
    std::vector<std::vector<dd>> ata(4, std::vector<dd>(4, dd(0.0)));
    std::vector<dd> atb(4, dd(0.0));
    for (size_t s = 0; s < xs.size(); ++s) {
        double b[4];
        for (int i = 0; i < 4; ++i) b[i] = basis(xs[s], i);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) ata[i][j] += dd(b[i]) * dd(b[j]);
            atb[i] += dd(b[i]) * dd(ys[s]);
        }
    }
    std::vector<dd> c = solve_dense(ata, atb);
    fatou_coefficients out;
    out.C0 = to_double(c[0]);
    out.C1 = to_double(c[1]);
    out.C2 = to_double(c[2]);
    out.constant = to_double(c[3]);
    double ss = 0;
    for (size_t s = 0; s < xs.size(); ++s) {
        double fit = 0;
        for (int i = 0; i < 4; ++i) fit += to_double(c[i]) * basis(xs[s], i);
        ss += (ys[s] - fit) * (ys[s] - fit);
    }
    out.residual = std::sqrt(ss / double(xs.size()));
    return out;
}

fatou_coefficients fatou_fit(const solution_d& sol, double delta_lo, double delta_hi) {
    int p = sol.type.period();
    return fatou_fit_samples(
        [&](double x) { return eval_H_ext(sol.map, sol.tau, p, x); }, sol.map.x0, delta_lo,
        delta_hi);
}

} // namespace renorm
