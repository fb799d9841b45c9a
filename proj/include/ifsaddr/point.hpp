#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace ifsaddr {

using Point = std::vector<double>;

/// Absolute tolerance of the floating-point membership tests.
inline constexpr double kDefaultTolerance = 1e-9;

inline double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

inline double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::fmax(m, std::fabs(v));
  return m;
}

}  // namespace ifsaddr
