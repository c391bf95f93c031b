#pragma once

#include <string>
#include <vector>

#include "renorm/sweep.hpp"

namespace renorm {

struct check_result {
    std::string name;
    bool ok = false;
    std::string detail;
};

// Invariant suite over one stored solution: function-space shape, scaling
// identities, operator fixed-point property, return-map conjugacy, G-map
// multiplier, Abel defect, boundary fixed point, presentation geometry.
std::vector<check_result> verify_solution(const any_solution& s);

bool all_ok(const std::vector<check_result>& checks);

} // namespace renorm
