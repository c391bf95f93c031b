#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "renorm/errors.hpp"

namespace renorm {

// Rescaled tower member H_n(z) = tau^n H(z / tau^n).
template <class F>
std::complex<double> tower_map_eval(F&& base, double tau, int n, std::complex<double> z) {
    double scale = std::pow(tau, n);
    return scale * base(z / scale);
}

// defect of the tower consistency H_m = H_n^(p^(n-m)) at the given samples
template <class F>
double tower_consistency(F&& base, double tau, int p, int n, int m,
                         const std::vector<std::complex<double>>& samples) {
    if (m > n) fail(errc::value, "need m <= n");
    long reps = 1;
    for (int i = 0; i < n - m; ++i) reps *= p;
    double sup = 0;
    for (std::complex<double> z : samples) {
        std::complex<double> w = z;
        for (long r = 0; r < reps; ++r) w = tower_map_eval(base, tau, n, w);
        std::complex<double> direct = tower_map_eval(base, tau, m, z);
        sup = std::max(sup, std::abs(w - direct));
    }
    return sup;
}

// fraction of a coarse grid within delta of the union of rescaled copies
// t^n * K, n = 0..N
inline double rescaled_cover_fraction(const std::vector<std::complex<double>>& K, double t,
                                      int N, const std::vector<std::complex<double>>& grid,
                                      double delta) {
    size_t hit = 0;
    for (std::complex<double> g : grid) {
        bool close = false;
        for (int n = 0; n <= N && !close; ++n) {
            double scale = std::pow(t, n);
            for (std::complex<double> k : K) {
                if (std::abs(g - scale * k) <= delta) {
                    close = true;
                    break;
                }
            }
        }
        if (close) ++hit;
    }
    return grid.empty() ? 0.0 : double(hit) / double(grid.size());
}

} // namespace renorm
