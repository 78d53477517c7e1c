#pragma once

#include <cmath>
#include <numbers>

namespace besselsum::specfun::detail {

// sin(pi u) with exact argument reduction; exact zeros at integers.
inline double sinpi(double u) {
  double r = u - 2.0 * std::nearbyint(0.5 * u);  // [-1, 1]
  if (r > 0.5) {
    r = 1.0 - r;
  } else if (r < -0.5) {
    r = -1.0 - r;
  }
  return std::sin(std::numbers::pi * r);
}

// cos(pi u); exact zeros at half-integers.
inline double cospi(double u) {
  double r = std::fabs(u - 2.0 * std::nearbyint(0.5 * u));  // [0, 1]
  if (r == 0.5) return 0.0;
  if (r > 0.5) return -std::sin(std::numbers::pi * (r - 0.5));
  return std::sin(std::numbers::pi * (0.5 - r));
}

}  // namespace besselsum::specfun::detail
