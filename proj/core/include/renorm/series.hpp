#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "renorm/errors.hpp"
#include "renorm/scalar.hpp"

namespace renorm {

// Finite Chebyshev series on a real interval [lo, hi].  The basis is T_k of
// the affinely mapped variable t = (2x - lo - hi)/(hi - lo).
template <class R>
struct series {
    R lo{};
    R hi{};
    std::vector<R> coeffs; // degree + 1 entries

    int degree() const { return int(coeffs.size()) - 1; }
    R mid() const { return mul_half(lo + hi); }
    R half_width() const { return mul_half(hi - lo); }

    static R mul_half(const R& v) {
        if constexpr (std::is_same_v<R, dd>)
            return mul_pwr2(v, 0.5);
        else
            return v * 0.5;
    }
};

using series_d = series<double>;
using series_dd = series<dd>;

// cos(pi * m / n) for any m >= 0 (reduces modulo the period)
template <class R>
R cos_pi_mod(long m, long n) {
    m %= 2 * n;
    if (m > n) m = 2 * n - m;
    return cheb_angle<R>(m, n);
}

// Chebyshev-Lobatto nodes in increasing order; endpoints included.
template <class R>
std::vector<R> cheb_nodes(const R& lo, const R& hi, int degree) {
    if (degree < 0) fail(errc::arity, "negative degree");
    std::vector<R> x(degree + 1);
    R mid = series<R>::mul_half(lo + hi);
    R half = series<R>::mul_half(hi - lo);
    if (degree == 0) {
        x[0] = mid;
        return x;
    }
    for (int j = 0; j <= degree; ++j)
        x[j] = mid - half * cheb_angle<R>(j, degree);
    return x;
}

// Interpolate values given at cheb_nodes(lo, hi, n) (same increasing order).
template <class R>
series<R> fit_at_nodes(const R& lo, const R& hi, const std::vector<R>& values) {
    int n = int(values.size()) - 1;
    if (n < 0) fail(errc::arity, "no samples");
    for (const R& v : values)
        if (!isfinite(v)) fail(errc::value, "non-finite sample");
    series<R> s;
    s.lo = lo;
    s.hi = hi;
    s.coeffs.assign(n + 1, R(0));
    if (n == 0) {
        s.coeffs[0] = values[0];
        return s;
    }
    // discrete orthogonality on Lobatto points; values[j] sits at
    // t = -cos(pi j / n), so index n - j matches t_j = cos(pi j / n)
    for (int k = 0; k <= n; ++k) {
        R acc(0);
        for (int j = 0; j <= n; ++j) {
            R term = values[n - j] * cos_pi_mod<R>(long(k) * j, n);
            if (j == 0 || j == n) term = series<R>::mul_half(term);
            acc += term;
        }
        R gamma = (k == 0 || k == n) ? R(double(n)) : series<R>::mul_half(R(double(n)));
        s.coeffs[k] = acc / gamma;
    }
    return s;
}

template <class R, class F>
series<R> fit_function(const R& lo, const R& hi, int degree, F&& f) {
    std::vector<R> x = cheb_nodes(lo, hi, degree);
    std::vector<R> v(x.size());
    for (size_t i = 0; i < x.size(); ++i) v[i] = f(x[i]);
    return fit_at_nodes(lo, hi, v);
}

// Clenshaw evaluation without any domain policing.
template <class R>
R eval_unchecked(const series<R>& s, const R& x) {
    R t = (x + x - s.lo - s.hi) / (s.hi - s.lo);
    R b1(0), b2(0);
    R t2 = t + t;
    for (int k = s.degree(); k >= 1; --k) {
        R b0 = s.coeffs[k] + t2 * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return s.coeffs[0] + t * b1 - b2;
}

inline std::complex<double> eval_unchecked(const series_d& s, std::complex<double> z) {
    std::complex<double> t = (2.0 * z - s.lo - s.hi) / (s.hi - s.lo);
    std::complex<double> b1 = 0.0, b2 = 0.0;
    std::complex<double> t2 = 2.0 * t;
    for (int k = s.degree(); k >= 1; --k) {
        std::complex<double> b0 = s.coeffs[k] + t2 * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return s.coeffs[0] + t * b1 - b2;
}

// Bernstein-ellipse parameter of a point relative to the series domain;
// rho == 1 on [lo, hi], grows with distance from it.
inline double bernstein_rho(const series_d& s, std::complex<double> z) {
    std::complex<double> u = (2.0 * z - s.lo - s.hi) / (s.hi - s.lo);
    std::complex<double> w = u + std::sqrt(u * u - 1.0);
    double r = std::abs(w);
    return r >= 1.0 ? r : 1.0 / r;
}

template <class R>
double bernstein_rho_real(const series<R>& s, const R& x) {
    double u = (2.0 * to_double(x) - to_double(s.lo) - to_double(s.hi)) /
               (to_double(s.hi) - to_double(s.lo));
    if (u >= -1.0 && u <= 1.0) return 1.0;
    double a = std::abs(u);
    return a + std::sqrt(a * a - 1.0);
}

// Strict evaluation: x must lie in the domain up to a 1e-12 relative slack.
template <class R>
R eval_checked(const series<R>& s, const R& x) {
    double span = to_double(s.hi) - to_double(s.lo);
    double slack = 1e-12 * std::max(1.0, std::abs(span));
    if (to_double(x) < to_double(s.lo) - slack || to_double(x) > to_double(s.hi) + slack)
        fail(errc::domain, "evaluation point outside series domain");
    return eval_unchecked(s, x);
}

// Derivative as a new series on the same interval.
template <class R>
series<R> derivative(const series<R>& s) {
    int n = s.degree();
    series<R> d;
    d.lo = s.lo;
    d.hi = s.hi;
    d.coeffs.assign(std::max(n, 1), R(0));
    // T_k' = k U_{k-1} and U_{k-1} = 2(T_{k-1} + T_{k-3} + ...) with the
    // T_0 term counted once
    for (int k = 1; k <= n; ++k) {
        R w = R(double(k)) * s.coeffs[k];
        for (int j = k - 1; j >= 0; j -= 2)
            d.coeffs[j] += (j == 0) ? w : (w + w);
    }
    R chain = R(2) / (s.hi - s.lo);
    for (auto& c : d.coeffs) c *= chain;
    return d;
}

inline series_d to_double_series(const series_dd& s) {
    series_d out;
    out.lo = to_double(s.lo);
    out.hi = to_double(s.hi);
    out.coeffs.reserve(s.coeffs.size());
    for (const dd& c : s.coeffs) out.coeffs.push_back(to_double(c));
    return out;
}
inline series_dd to_dd_series(const series_d& s) {
    series_dd out;
    out.lo = dd(s.lo);
    out.hi = dd(s.hi);
    out.coeffs.assign(s.coeffs.begin(), s.coeffs.end());
    return out;
}

} // namespace renorm
