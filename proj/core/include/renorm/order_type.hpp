#pragma once

#include <string>
#include <vector>

#include "renorm/errors.hpp"

namespace renorm {

// Order type of a periodic critical orbit: perm[i] is the rank (1-based) of
// the i-th orbit point.  Negating all points complements the ranks, so each
// class has two representatives; the canonical one ranks the second orbit
// point above the first.
struct order_type {
    std::vector<int> perm;

    int period() const { return int(perm.size()); }
    bool operator==(const order_type& o) const { return perm == o.perm; }
    bool operator!=(const order_type& o) const { return perm != o.perm; }
    std::string str() const;
};

order_type canonicalize(std::vector<int> perm);
order_type order_type_of(const std::vector<double>& points);
order_type period_doubling(); // [1,2]

// "pd", or a bracketed list like [2,3,1]
order_type parse_order_type(const std::string& text);

} // namespace renorm
