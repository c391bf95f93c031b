#pragma once

#include <functional>

#include "renorm/fixed_point.hpp"

namespace renorm {

// Coefficients of the singular expansion of log H at the critical point,
//   log H = C0 (x-x0)^-2 + C1 (x-x0)^-1 + C2 log|x-x0| + O(1),
// fitted by least squares on a two-sided log-spaced stencil.
struct fatou_coefficients {
    double C0 = 0;
    double C1 = 0;
    double C2 = 0;
    double constant = 0;
    double residual = 0;
};

// Core fitter works on log H directly: near the critical point H underflows
// any floating format long before the expansion loses validity.
fatou_coefficients fatou_fit_log_samples(const std::function<double(double)>& logH,
                                         double x0, double delta_lo = 1e-4,
                                         double delta_hi = 1e-1, int per_side = 16);

fatou_coefficients fatou_fit_samples(const std::function<double(double)>& H, double x0,
                                     double delta_lo = 1e-4, double delta_hi = 1e-1,
                                     int per_side = 16);

fatou_coefficients fatou_fit(const solution_d& sol, double delta_lo = 1e-4,
                             double delta_hi = 1e-1);

} // namespace renorm
