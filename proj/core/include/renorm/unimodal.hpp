#pragma once

#include <algorithm>
#include <complex>
#include <vector>

#include "renorm/series.hpp"

namespace renorm {

// --- plain series operations ------------------------------------------------

inline double eval_series(const series_d& s, double x) { return eval_checked(s, x); }

// Samples must sit at the Chebyshev-Lobatto nodes of their own span.
inline series_d fit_series(std::vector<std::pair<double, double>> samples, int degree) {
    if (int(samples.size()) != degree + 1)
        fail(errc::arity, "need degree+1 samples at Chebyshev nodes");
    for (auto& [x, y] : samples)
        if (!std::isfinite(x) || !std::isfinite(y)) fail(errc::value, "non-finite sample");
    std::sort(samples.begin(), samples.end());
    double lo = samples.front().first, hi = samples.back().first;
    if (degree > 0 && !(hi > lo)) fail(errc::value, "degenerate sample span");
    std::vector<double> nodes = cheb_nodes(lo, hi, degree);
    std::vector<double> vals(samples.size());
    for (size_t j = 0; j < samples.size(); ++j) {
        if (std::abs(samples[j].first - nodes[j]) > 1e-8 * std::max(1.0, hi - lo))
            fail(errc::value, "sample abscissae are not the Chebyshev nodes");
        vals[j] = samples[j].second;
    }
    return fit_at_nodes(lo, hi, vals);
}

template <class R>
R invert_monotone(const series<R>& s, const R& y) {
    const int probes = 64;
    R a = s.lo, b = s.hi;
    R fa = eval_unchecked(s, a), fb = eval_unchecked(s, b);
    bool increasing = fb > fa;
    {
        R prev = fa;
        for (int i = 1; i <= probes; ++i) {
            R x = a + (b - a) * R(double(i) / probes);
            R v = eval_unchecked(s, x);
            if ((increasing && !(v > prev)) || (!increasing && !(v < prev)))
                fail(errc::monotonicity, "series is not strictly monotone");
            prev = v;
        }
    }
    R ylo = increasing ? fa : fb, yhi = increasing ? fb : fa;
    double scale = std::max({1.0, std::abs(to_double(ylo)), std::abs(to_double(yhi))});
    double slack = 1e-12 * scale;
    if (to_double(y) < to_double(ylo) - slack || to_double(y) > to_double(yhi) + slack)
        fail(errc::range, "target outside series range");

    for (int i = 0; i < 64; ++i) {
        R m = series<R>::mul_half(a + b);
        R fm = eval_unchecked(s, m);
        bool left = increasing ? (fm < y) : (fm > y);
        if (left)
            a = m;
        else
            b = m;
    }
    series<R> ds = derivative(s);
    R x = series<R>::mul_half(a + b);
    for (int i = 0; i < 4; ++i) {
        R d = eval_unchecked(ds, x);
        if (std::abs(to_double(d)) < 1e-14) break;
        x = x - (eval_unchecked(s, x) - y) / d;
        if (x < s.lo) x = s.lo;
        if (x > s.hi) x = s.hi;
    }
    if (std::abs(to_double(eval_unchecked(s, x)) - to_double(y)) > 1e-13 * scale)
        fail(errc::no_convergence, "monotone inversion did not reach tolerance");
    return x;
}

template <class R>
R schwarzian(const series<R>& s, const R& x) {
    series<R> d1 = derivative(s);
    series<R> d2 = derivative(d1);
    series<R> d3 = derivative(d2);
    R v1 = eval_unchecked(d1, x);
    if (std::abs(to_double(v1)) < 1e-14)
        fail(errc::degeneracy, "derivative too small for Schwarzian");
    R r2 = eval_unchecked(d2, x) / v1;
    return eval_unchecked(d3, x) / v1 - series<R>::mul_half(R(3) * r2 * r2);
}

// --- unimodal maps H = |E|^ell ----------------------------------------------

template <class R>
struct unimodal_map {
    series<R> E;
    R ell{};
    R x0{};                 // E(x0) = 0, cached at construction
    double trust_rho = 1.5; // Bernstein-ellipse parameter for continuation
};

using unimodal_d = unimodal_map<double>;
using unimodal_dd = unimodal_map<dd>;

template <class R>
R eval_series_trusted(const unimodal_map<R>& m, const R& x) {
    if (bernstein_rho_real(m.E, x) > m.trust_rho)
        fail(errc::domain, "point outside trust radius of series domain");
    return eval_unchecked(m.E, x);
}

template <class R>
R pow_abs(const R& base, const R& expo) {
    R a = abs(base);
    if (to_double(a) == 0.0) return R(0);
    return exp(expo * log(a));
}

// H(x) = |E(x)|^ell for real x inside the trust window
template <class R>
R eval_H(const unimodal_map<R>& m, const R& x) {
    return pow_abs(eval_series_trusted(m, x), m.ell);
}

// d/dx |E|^ell = ell |E|^(ell-1) sgn(E) E'
template <class R>
R eval_H_prime(const unimodal_map<R>& m, const R& x, const series<R>& Eprime) {
    R e = eval_series_trusted(m, x);
    R d = eval_unchecked(Eprime, x);
    if (to_double(e) == 0.0) return R(0);
    R mag = exp((m.ell - 1.0) * log(abs(e)));
    R sgn = to_double(e) < 0.0 ? R(-1) : R(1);
    return m.ell * mag * sgn * d;
}

// Principal-branch complex continuation of H = ((E)^2)^(ell/2); defined off
// the slit where E(z)^2 is negative real (E purely imaginary).
inline std::complex<double> eval_H(const unimodal_d& m, std::complex<double> z) {
    if (z.imag() == 0.0) return {eval_H(m, z.real()), 0.0};
    if (bernstein_rho(m.E, z) > m.trust_rho)
        fail(errc::domain, "point outside trust radius of series domain");
    std::complex<double> e = eval_unchecked(m.E, z);
    std::complex<double> w = e * e;
    if (w.real() <= 0.0 && std::abs(w.imag()) <= 1e-14 * std::abs(w))
        fail(errc::branch, "E(z)^2 on the negative-real slit");
    return std::exp(0.5 * m.ell * std::log(w));
}

template <class R>
void validate_unimodal(const unimodal_map<R>& m) {
    if (!(to_double(m.ell) > 1.0)) fail(errc::value, "criticality must exceed 1");
    if (!(to_double(m.E.lo) <= 0.0 && to_double(m.E.hi) >= 1.0))
        fail(errc::domain, "series domain must cover [0,1]");
    R one = eval_unchecked(m.E, R(0));
    if (std::abs(to_double(one) - 1.0) > 1e-12)
        fail(errc::value, "normalization E(0) = 1 violated");
    series<R> d = derivative(m.E);
    int n = std::max(2 * m.E.degree() + 1, 65);
    for (int i = 0; i <= n; ++i) {
        R x = m.E.lo + (m.E.hi - m.E.lo) * R(double(i) / n);
        if (!(to_double(eval_unchecked(d, x)) < 0.0))
            fail(errc::monotonicity, "E is not strictly decreasing");
    }
    double x0 = to_double(m.x0);
    if (!(x0 > to_double(m.E.lo) && x0 < to_double(m.E.hi)))
        fail(errc::domain, "critical point not interior");
}

template <class R>
unimodal_map<R> make_unimodal(series<R> E, const R& ell, double trust_rho = 1.5) {
    unimodal_map<R> m;
    m.E = std::move(E);
    m.ell = ell;
    m.trust_rho = trust_rho;
    m.x0 = invert_monotone(m.E, R(0));
    validate_unimodal(m);
    return m;
}

} // namespace renorm
