#pragma once

#include <stdexcept>
#include <string>

namespace biex {

/// Input outside the supported scope (bad parse, additive reduction, ...).
struct UnsupportedInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A quadrature or extrapolation failed to reach the requested accuracy.
struct NumericalFailure : std::runtime_error {
  NumericalFailure(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_bound(achieved) {}
  double achieved_bound = 0;
};

}  // namespace biex
