#pragma once

#include <string>

#include "biex/poly.hpp"

namespace biex {

/// Parses a rational expression in x, y with rational coefficients,
/// e.g. "x - 5", "(y+1)/(x^2-3)", "2/3*x*y". Throws std::invalid_argument.
RatFn2 parse_ratfn(const std::string& s);

/// Parses a univariate polynomial in x (no y, no division by non-constants).
PolyQ parse_poly_x(const std::string& s);

}  // namespace biex
