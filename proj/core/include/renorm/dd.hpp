#pragma once

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace renorm {

// Double-double scalar: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2,
// giving ~31 significant decimal digits.  Error-free transformations follow
// Dekker/Knuth as organized in Bailey's QD library.
struct dd {
    double hi = 0.0;
    double lo = 0.0;

    constexpr dd() = default;
    constexpr dd(double h) : hi(h), lo(0.0) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}
    constexpr dd(int n) : hi(double(n)), lo(0.0) {}

    explicit operator double() const { return hi; }
};

namespace detail {

inline double two_sum(double a, double b, double& err) {
    double s = a + b;
    double bb = s - a;
    err = (a - (s - bb)) + (b - bb);
    return s;
}

// requires |a| >= |b| (or a == 0)
inline double quick_two_sum(double a, double b, double& err) {
    double s = a + b;
    err = b - (s - a);
    return s;
}

inline double two_prod(double a, double b, double& err) {
    double p = a * b;
    err = std::fma(a, b, -p);
    return p;
}

} // namespace detail

inline dd operator-(const dd& a) { return dd(-a.hi, -a.lo); }

inline dd operator+(const dd& a, const dd& b) {
    double s1, s2, t1, t2;
    s1 = detail::two_sum(a.hi, b.hi, s2);
    t1 = detail::two_sum(a.lo, b.lo, t2);
    s2 += t1;
    s1 = detail::quick_two_sum(s1, s2, s2);
    s2 += t2;
    s1 = detail::quick_two_sum(s1, s2, s2);
    return dd(s1, s2);
}

inline dd operator-(const dd& a, const dd& b) { return a + (-b); }

inline dd operator*(const dd& a, const dd& b) {
    double p1, p2;
    p1 = detail::two_prod(a.hi, b.hi, p2);
    p2 += a.hi * b.lo + a.lo * b.hi;
    p1 = detail::quick_two_sum(p1, p2, p2);
    return dd(p1, p2);
}

inline dd operator/(const dd& a, const dd& b) {
    double q1 = a.hi / b.hi;
    dd r = a - b * dd(q1);
    double q2 = r.hi / b.hi;
    r = r - b * dd(q2);
    double q3 = r.hi / b.hi;
    double e;
    double s = detail::quick_two_sum(q1, q2, e);
    return dd(s, e) + dd(q3);
}

inline dd operator+(const dd& a, double b) { return a + dd(b); }
inline dd operator+(double a, const dd& b) { return dd(a) + b; }
inline dd operator-(const dd& a, double b) { return a - dd(b); }
inline dd operator-(double a, const dd& b) { return dd(a) - b; }
inline dd operator*(const dd& a, double b) { return a * dd(b); }
inline dd operator*(double a, const dd& b) { return dd(a) * b; }
inline dd operator/(const dd& a, double b) { return a / dd(b); }
inline dd operator/(double a, const dd& b) { return dd(a) / b; }

inline dd& operator+=(dd& a, const dd& b) { a = a + b; return a; }
inline dd& operator-=(dd& a, const dd& b) { a = a - b; return a; }
inline dd& operator*=(dd& a, const dd& b) { a = a * b; return a; }
inline dd& operator/=(dd& a, const dd& b) { a = a / b; return a; }

inline bool operator==(const dd& a, const dd& b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(const dd& a, const dd& b) { return !(a == b); }
inline bool operator<(const dd& a, const dd& b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const dd& a, const dd& b) { return b < a; }
inline bool operator<=(const dd& a, const dd& b) { return !(b < a); }
inline bool operator>=(const dd& a, const dd& b) { return !(a < b); }

inline bool operator<(const dd& a, double b) { return a < dd(b); }
inline bool operator>(const dd& a, double b) { return a > dd(b); }
inline bool operator<=(const dd& a, double b) { return a <= dd(b); }
inline bool operator>=(const dd& a, double b) { return a >= dd(b); }
inline bool operator==(const dd& a, double b) { return a == dd(b); }
inline bool operator<(double a, const dd& b) { return dd(a) < b; }
inline bool operator>(double a, const dd& b) { return dd(a) > b; }

// exact scaling by a power of two
inline dd mul_pwr2(const dd& a, double p) { return dd(a.hi * p, a.lo * p); }

inline dd abs(const dd& a) { return a.hi < 0.0 ? -a : a; }
inline bool isfinite(const dd& a) { return std::isfinite(a.hi) && std::isfinite(a.lo); }

inline dd sqr(const dd& a) {
    double p1, p2;
    p1 = detail::two_prod(a.hi, a.hi, p2);
    p2 += 2.0 * a.hi * a.lo;
    p1 = detail::quick_two_sum(p1, p2, p2);
    return dd(p1, p2);
}

inline dd sqrt(const dd& a) {
    if (a.hi == 0.0 && a.lo == 0.0) return dd(0.0);
    if (a.hi < 0.0) return dd(std::numeric_limits<double>::quiet_NaN());
    double x = 1.0 / std::sqrt(a.hi);
    double ax = a.hi * x;
    dd corr = a - sqr(dd(ax));
    double e;
    double s = detail::quick_two_sum(ax, corr.hi * (x * 0.5), e);
    return dd(s, e);
}

inline const dd dd_pi(3.141592653589793116e+00, 1.224646799147353207e-16);
inline const dd dd_ln2(6.931471805599452862e-01, 2.319046813846299558e-17);
inline constexpr double dd_eps = 4.93038065763132e-32; // 2^-104

namespace detail {

// 1/k! for k = 3..30, built once by correctly-rounded dd division
inline const dd* inv_fact() {
    static dd table[28];
    static bool init = [] {
        dd f(2.0);
        for (int k = 3; k <= 30; ++k) {
            f = f * dd(double(k));
            table[k - 3] = dd(1.0) / f;
        }
        return true;
    }();
    (void)init;
    return table;
}

} // namespace detail

inline dd ldexp(const dd& a, int n) {
    return dd(std::ldexp(a.hi, n), std::ldexp(a.lo, n));
}

inline dd exp(const dd& a) {
    constexpr double k = 512.0;
    constexpr double inv_k = 1.0 / k;
    if (a.hi <= -709.0) return dd(0.0);
    if (a.hi >= 709.0) return dd(std::numeric_limits<double>::infinity());
    if (a.hi == 0.0 && a.lo == 0.0) return dd(1.0);

    double m = std::floor(a.hi / dd_ln2.hi + 0.5);
    dd r = mul_pwr2(a - dd_ln2 * dd(m), inv_k);

    const dd* ifac = detail::inv_fact();
    dd p = sqr(r);
    dd s = r + mul_pwr2(p, 0.5);
    p = p * r;
    dd t = p * ifac[0];
    int i = 0;
    do {
        s = s + t;
        p = p * r;
        ++i;
        t = p * ifac[i];
    } while (std::abs(t.hi) > inv_k * dd_eps && i < 16);
    s = s + t;

    // undo the 2^9 scaling: exp(x)^2 = (1+s)^2 - 1 tracked as s' = 2s + s^2
    for (int j = 0; j < 9; ++j)
        s = mul_pwr2(s, 2.0) + sqr(s);
    s = s + 1.0;
    return ldexp(s, int(m));
}

inline dd log(const dd& a) {
    if (a.hi <= 0.0) return dd(std::numeric_limits<double>::quiet_NaN());
    if (a.hi == 1.0 && a.lo == 0.0) return dd(0.0);
    dd x(std::log(a.hi));
    x = x + a * exp(-x) - 1.0;
    x = x + a * exp(-x) - 1.0;
    return x;
}

// pow for positive base
inline dd pow(const dd& a, const dd& b) {
    if (a.hi == 0.0 && a.lo == 0.0) return dd(0.0);
    return exp(b * log(a));
}

inline dd powi(dd a, int n) {
    if (n < 0) return dd(1.0) / powi(a, -n);
    dd r(1.0);
    while (n) {
        if (n & 1) r = r * a;
        a = sqr(a);
        n >>= 1;
    }
    return r;
}

namespace detail {

// Taylor sine/cosine, |x| <= pi/4
inline dd sin_taylor(const dd& x) {
    if (x.hi == 0.0 && x.lo == 0.0) return dd(0.0);
    const dd* ifac = detail::inv_fact();
    dd x2 = sqr(x);
    dd s = x;
    dd p = x;
    for (int k = 3; k <= 29; k += 2) {
        p = p * x2;
        dd t = p * ifac[k - 3];
        s = (k % 4 == 3) ? s - t : s + t;
        if (std::abs(t.hi) < dd_eps) break;
    }
    return s;
}

inline dd cos_taylor(const dd& x) {
    const dd* ifac = detail::inv_fact();
    dd x2 = sqr(x);
    dd s = dd(1.0) - mul_pwr2(x2, 0.5);
    dd p = x2;
    for (int k = 4; k <= 30; k += 2) {
        p = p * x2;
        dd t = p * ifac[k - 3];
        s = (k % 4 == 0) ? s + t : s - t;
        if (std::abs(t.hi) < dd_eps) break;
    }
    return s;
}

} // namespace detail

// cos(pi*j/n) for 0 <= j <= n, exact antisymmetry about j = n/2
inline dd cos_pi_frac(long j, long n) {
    if (2 * j == n) return dd(0.0);
    if (2 * j > n) return -cos_pi_frac(n - j, n);
    if (j == 0) return dd(1.0);
    // now 0 < j < n/2
    if (4 * j <= n) {
        dd theta = dd_pi * dd(double(j)) / dd(double(n));
        return detail::cos_taylor(theta);
    }
    dd phi = dd_pi * dd(double(n - 2 * j)) / dd(2.0 * double(n));
    return detail::sin_taylor(phi);
}

} // namespace renorm
