#include "renorm/quadratic.hpp"

#include <algorithm>
#include <cmath>

namespace renorm {
namespace {

constexpr int kMaxPeriod = 12;

double orbit_end(double lambda, long n) {
    double x = 0.0;
    for (long i = 0; i < n; ++i) x = 1.0 - lambda * x * x;
    return x;
}

double bisect_root(double a, double b, double fa, long n) {
    for (int i = 0; i < 200; ++i) {
        double m = 0.5 * (a + b);
        if (m == a || m == b) break;
        double fm = orbit_end(m, n);
        if ((fa < 0) == (fm < 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

void scan_range(double a, double b, int samples, long n, std::vector<double>& roots) {
    double fa = orbit_end(a, n);
    double prev_x = a, prev_f = fa;
    for (int i = 1; i <= samples; ++i) {
        double x = a + (b - a) * double(i) / samples;
        double f = orbit_end(x, n);
        if ((prev_f < 0) != (f < 0))
            roots.push_back(bisect_root(prev_x, x, prev_f, n));
        prev_x = x;
        prev_f = f;
    }
}

} // namespace

double quad_orbit_point(double lambda, long n) { return orbit_end(lambda, n); }

std::vector<double> superstable_params(int p) {
    if (p < 2) fail(errc::value, "period must be >= 2");
    if (p > kMaxPeriod) fail(errc::unsupported, "superstable search supports period <= 12");

    const double lo = 0.05, hi = 2.0;
    int samples = std::min(1 << 24, std::max(1 << 18, (1 << p) * 4000));
    std::vector<double> roots;

    // coarse pass plus a valley pass that subsamples cells where |f^p(0)|
    // dips without a sign change (possible near-tangent root pairs)
    {
        double fprev2 = 0, fprev = 0;
        double xprev2 = 0, xprev = 0;
        bool have2 = false, have1 = false;
        for (int i = 0; i <= samples; ++i) {
            double x = lo + (hi - lo) * double(i) / samples;
            double f = orbit_end(x, p);
            if (have1 && (fprev < 0) != (f < 0))
                roots.push_back(bisect_root(xprev, x, fprev, p));
            if (have2 && (fprev2 < 0) == (fprev < 0) && (fprev < 0) == (f < 0) &&
                std::abs(fprev) < std::abs(fprev2) && std::abs(fprev) < std::abs(f))
                scan_range(xprev2, x, 256, p, roots);
            fprev2 = fprev;
            xprev2 = xprev;
            have2 = have1;
            fprev = f;
            xprev = x;
            have1 = true;
        }
    }

    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-11; }),
                roots.end());

    // keep exact period p only
    std::vector<double> out;
    for (double lam : roots) {
        bool lower = false;
        for (int d = 1; d < p; ++d) {
            if (p % d) continue;
            if (std::abs(orbit_end(lam, d)) < 1e-8) {
                lower = true;
                break;
            }
        }
        if (!lower) out.push_back(lam);
    }
    return out;
}

order_type quad_orbit_type(double lambda, int p) {
    std::vector<double> pts(p);
    double x = 0.0;
    for (int i = 0; i < p; ++i) {
        pts[i] = x;
        x = 1.0 - lambda * x * x;
    }
    return order_type_of(pts);
}

bool validate_admissible(const order_type& t) {
    int p = t.period();
    if (p < 2) fail(errc::value, "period must be >= 2");
    if (p > kMaxPeriod) fail(errc::unsupported, "admissibility search supports period <= 12");
    for (double lam : superstable_params(p))
        if (quad_orbit_type(lam, p) == t) return true;
    return false;
}

namespace {

bool return_types_match(double lambda, const order_type& t, int levels) {
    int p = t.period();
    for (int m = 1; m <= levels; ++m) {
        long stride = 1;
        for (int i = 1; i < m; ++i) stride *= p;
        std::vector<double> pts(p);
        for (int j = 0; j < p; ++j) pts[j] = orbit_end(lambda, stride * j);
        try {
            if (order_type_of(pts) != t) return false;
        } catch (const error&) {
            return false;
        }
    }
    return true;
}

} // namespace

std::vector<double> tuning_cascade(const order_type& t, int depth) {
    int p = t.period();
    std::vector<double> cascade;
    for (double lam : superstable_params(p)) {
        if (quad_orbit_type(lam, p) == t) {
            cascade.push_back(lam);
            break;
        }
    }
    if (cascade.empty()) fail(errc::combinatorics, "order type not realized: " + t.str());

    double gap = 0.05;
    long pn = p;
    for (int n = 2; n <= depth; ++n) {
        pn *= p;
        double step = gap / 128.0;
        double x = cascade.back() + std::max(step, 1e-13);
        double f = orbit_end(x, pn);
        double found = -1.0;
        for (long it = 0; it < 4000000 && x < 2.0; ++it) {
            double xn = x + step;
            double fn = orbit_end(xn, pn);
            if ((f < 0) != (fn < 0)) {
                double root = bisect_root(x, xn, f, pn);
                if (return_types_match(root, t, n)) {
                    found = root;
                    break;
                }
            }
            x = xn;
            f = fn;
        }
        if (found < 0)
            fail(errc::no_convergence, "tuning cascade search failed at level " +
                                           std::to_string(n));
        gap = found - cascade.back();
        cascade.push_back(found);
    }
    return cascade;
}

double alpha_scaling_oracle(const order_type& t, int depth) {
    if (depth < 4) fail(errc::value, "oracle needs depth >= 4");
    std::vector<double> cascade = tuning_cascade(t, depth);
    int p = t.period();

    // closest-return distance at level n is |f^{p^{n-1}}(0)|
    std::vector<double> dist;
    long stride = 1;
    for (int n = 1; n <= depth; ++n) {
        dist.push_back(std::abs(orbit_end(cascade[n - 1], stride)));
        stride *= p;
    }
    std::vector<double> ratio;
    for (size_t i = 0; i + 1 < dist.size(); ++i) ratio.push_back(dist[i] / dist[i + 1]);

    // Aitken extrapolation of the geometrically converging ratios
    std::vector<double> acc = ratio;
    while (acc.size() >= 3) {
        std::vector<double> next;
        for (size_t i = 0; i + 2 < acc.size(); ++i) {
            double d1 = acc[i + 1] - acc[i];
            double d2 = acc[i + 2] - acc[i + 1];
            double den = d2 - d1;
            if (std::abs(den) < 1e-14 * std::abs(acc[i + 2])) {
                next.push_back(acc[i + 2]);
            } else {
                next.push_back(acc[i + 2] - d2 * d2 / den);
            }
        }
        if (next.size() < 3) return next.back();
        acc = std::move(next);
        if (acc.size() <= 4) return acc.back();
    }
    return acc.back();
}

} // namespace renorm
