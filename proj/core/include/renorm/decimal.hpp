#pragma once

#include <string>

#include "renorm/dd.hpp"

namespace renorm {

// Exact decimal representation of binary floating-point values.  Every finite
// double (and hence every dd, a sum of two doubles) has a finite decimal
// expansion; writing it out in full makes serialize/parse round-trips exact.
std::string exact_decimal(double x);
std::string exact_decimal(const dd& x);

// Inverse of exact_decimal for dd: first strtod gives the correctly rounded
// leading component, the exact decimal remainder gives the trailing one.
dd dd_from_decimal(const std::string& s);
double double_from_decimal(const std::string& s);

} // namespace renorm
