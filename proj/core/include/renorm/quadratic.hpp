#pragma once

#include <vector>

#include "renorm/order_type.hpp"

namespace renorm {

// Reference family f(x) = 1 - lambda x^2 on [-1,1].  Superstable orbits of
// this family realize exactly the admissible unimodal order types, which is
// what the admissibility check and the scaling oracle lean on.

double quad_orbit_point(double lambda, long n); // f^n(0)

// All parameters in (0,2] whose critical orbit is periodic with exact
// period p.  Cost grows like 2^p; capped at p <= 12.
std::vector<double> superstable_params(int p);

// Order type of the critical orbit 0, f(0), ..., f^{p-1}(0).
order_type quad_orbit_type(double lambda, int p);

bool validate_admissible(const order_type& t);

// lambda_1 < lambda_2 < ... with lambda_n superstable of period p^n whose
// return orbits realize t at every renormalization level up to n.
std::vector<double> tuning_cascade(const order_type& t, int depth);

// |alpha| estimated from closest-return distances along the cascade,
// Aitken-accelerated.  Independent of the functional-equation solver.
double alpha_scaling_oracle(const order_type& t, int depth);

} // namespace renorm
