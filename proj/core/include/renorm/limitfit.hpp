#pragma once

#include <vector>

#include "renorm/fatou.hpp"
#include "renorm/gdyn.hpp"
#include "renorm/sweep.hpp"

namespace renorm {

// Per-criticality diagnostics feeding the flat-limit extrapolation.
struct limit_fit_row {
    double ell = 0;
    double x0 = 0;
    double tau = 0;
    double C0 = 0, C1 = 0, C2 = 0;
    double mult_measured = 0;
    double mult_predicted = 0;
};

// Extrapolated description of the flat limit map: critical point, scaling,
// singularity coefficients of log H, and the cubic coefficient of G^2.
struct ew_limit_estimate {
    double x0 = 0;
    double tau = 0;
    double C0 = 0, C1 = 0, C2 = 0;
    double epsilon = 0;
    double fit_residual = 0;
    std::vector<double> source_ells;
};

std::vector<limit_fit_row> limit_diagnostics(const sweep_result& sr);

// Richardson-style fit in 1/ell of the per-row data; epsilon comes from the
// parabolic fit at the deepest criticality.
ew_limit_estimate extrapolate_limit(const std::vector<limit_fit_row>& rows, double epsilon);

// parabolic fit of G^2 on the deepest solution of a sweep
parabolic_result epsilon_at_top(const solution_d& deepest);

} // namespace renorm
