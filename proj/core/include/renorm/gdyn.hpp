#pragma once

#include <complex>
#include <functional>

#include "renorm/fixed_point.hpp"

namespace renorm {

using cplx = std::complex<double>;

// G(x) = H^{p-1}(x/tau): the return dynamics whose parabolic germ at x0
// carries the flat-limit structure.  Built from a solved fixed point; the
// functional identity H(G(x)) = H(x)/tau holds up to the solution defect.
struct g_map {
    solution_d sol;
    double fixed_point_defect = 0; // |G(x0) - x0|
    double identity_defect = 0;    // sup_64 |H(x)/tau - H(G(x))|

    double operator()(double x) const;
    cplx operator()(cplx z) const;
};

g_map build_G(const solution_d& sol);

struct multiplier_result {
    double measured;  // |G'(x0)| by 5-point stencil
    double predicted; // tau^(-1/ell)
};
multiplier_result multiplier_check(const solution_d& sol);

// Least-squares fit of g2(x) - x against (x - x0)^3 on a log-spaced two-sided
// stencil.  g2 is the second iterate G∘G handed in as a callable; near the
// flat limit its expansion is x - eps (x-x0)^3 + ...
struct parabolic_result {
    double epsilon;
    double residual;
    bool degenerate = false; // g2 indistinguishable from the identity
};
parabolic_result parabolic_fit(const std::function<double(double)>& g2, double x0,
                               double delta_lo = 1e-3, double delta_hi = 1e-1);

// sup over the grid of |log H(G(z)) - log H(z) + log tau|
double abel_residual(const solution_d& sol, const std::vector<cplx>& grid);

// P^+-(w) = E^{-1}(sign exp(w / ell)); left inverse of the exp-lift of H
cplx inverse_branch_P(const solution_d& sol, int sign, cplx w);

} // namespace renorm
