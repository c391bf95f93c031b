#pragma once

#include <vector>

#include "renorm/fixed_point.hpp"

namespace renorm {

struct interval {
    double lo = 0;
    double hi = 0;
    double width() const { return hi - lo; }
    bool contains(const interval& o, double tol) const {
        return o.lo >= lo - tol && o.hi <= hi + tol;
    }
};

// The interval system behind the presentation function: J_q covering the
// critical omega-limit set, their shrunk copies Jcal_q, and the cut radius
// R' < b0.  Construction follows the return-map combinatorics; overlap of
// the Jcal is reported as a geometry error.
struct presentation_intervals {
    std::vector<interval> J;    // J_1 .. J_p
    std::vector<interval> Jcal; // shrunk versions
    double Rprime = 0;
    double b0 = 0;      // repelling fixed point beyond 1
    double b0_left = 0; // negative preimage of b0
};

presentation_intervals build_presentation(const solution_d& sol);

// fixed point of the extended H beyond 1 and its multiplier
struct boundary_fixed_point {
    double b0 = 0;
    double derivative = 0;
};
boundary_fixed_point find_b0(const solution_d& sol);

} // namespace renorm
