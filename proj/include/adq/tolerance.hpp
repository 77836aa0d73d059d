#pragma once

#include <algorithm>
#include <cmath>

namespace adq {

// Weight comparisons treat values within this relative distance as equal.
inline constexpr double relative_tolerance = 1e-9;

inline bool approx_equal(double a, double b) {
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= relative_tolerance * scale;
}

inline bool definitely_greater(double a, double b) { return a > b && !approx_equal(a, b); }

inline bool definitely_less(double a, double b) { return a < b && !approx_equal(a, b); }

inline bool greater_or_equal(double a, double b) { return !definitely_less(a, b); }

inline bool less_or_equal(double a, double b) { return !definitely_greater(a, b); }

}  // namespace adq
