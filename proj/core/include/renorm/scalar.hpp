#pragma once

#include <cmath>
#include <type_traits>

#include "renorm/dd.hpp"

namespace renorm {

// Generic-scalar helpers so numeric kernels compile for double and dd alike.
// Unqualified calls to sqrt/exp/log/abs/pow in templated code resolve either
// to <cmath> (via these usings) or to the dd overloads by ADL.
using std::abs;
using std::exp;
using std::isfinite;
using std::log;
using std::pow;
using std::sqrt;

inline double to_double(double x) { return x; }
inline double to_double(const dd& x) { return x.hi; }

template <class R>
inline R from_double(double x) {
    return R(x);
}

template <class R>
constexpr double real_eps() {
    if constexpr (std::is_same_v<R, dd>)
        return dd_eps;
    else
        return 2.220446049250313e-16;
}

inline double cos_pi_frac_d(long j, long n) { return to_double(cos_pi_frac(j, n)); }

template <class R>
inline R cheb_angle(long j, long n) {
    if constexpr (std::is_same_v<R, dd>)
        return cos_pi_frac(j, n);
    else
        return cos_pi_frac_d(j, n);
}

enum class precision_mode { hw_double, double_double };

inline const char* precision_name(precision_mode p) {
    return p == precision_mode::hw_double ? "double" : "dd";
}

} // namespace renorm
