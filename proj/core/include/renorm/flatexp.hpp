#pragma once

#include <complex>
#include <vector>

#include "renorm/errors.hpp"

namespace renorm {

using cplx = std::complex<double>;

// The straightened model family f(z) = exp(-c (z-a)^-2), a, c > 0.
// f omits 0, tends to 1 at infinity, and has its only singularity at a.
struct flat_exp_map {
    double a = 0.5;
    double c = 0.01;
};

// real_extension permits the continuous real-line extension f(a) = 0
cplx flat_exp_eval(const flat_exp_map& m, cplx z, bool real_extension = false);
double flat_exp_eval(const flat_exp_map& m, double x, bool real_extension = false);

cplx flat_exp_derivative(const flat_exp_map& m, cplx z);

// repelling/attracting real fixed points b_f < z0 < 1 beyond the singularity
struct flat_fixed_points {
    double b_f = 0;
    double z0 = 0;
    double mult_b = 0;  // |f'(b_f)| > 1
    double mult_z0 = 0; // |f'(z0)| < 1
};
flat_fixed_points find_fixed_points(const flat_exp_map& m);

// closed-form preimages a +- sqrt(-c / (Log v + 2 pi i k)) for each branch k
std::vector<cplx> preimages_of_point(const flat_exp_map& m, cplx v,
                                     const std::vector<int>& branch_indices);

} // namespace renorm
