#pragma once

#include <cmath>
#include <limits>

namespace soco {

/// Costs are doubles; an infinite hitting cost is the IEEE +inf value.
/// Sums of non-negative costs saturate at +inf, so ledgers never need
/// special handling as long as costs are only added and compared.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline bool is_infinite(double c) { return std::isinf(c) && c > 0; }

/// Absolute tolerance for cost comparisons in checks and tests.
inline constexpr double kCostTolerance = 1e-9;

/// Tolerance for LP feasibility residuals.
inline constexpr double kLpTolerance = 1e-7;

/// a <= b up to `tol`, absolute for |b| <= 1 and relative above that
/// (double sums of large costs cannot resolve an absolute 1e-9).
/// inf <= inf holds.
inline bool leq_tol(double a, double b, double tol = kCostTolerance) {
  if (is_infinite(b)) return true;
  if (is_infinite(a)) return false;
  return a <= b + tol * std::fmax(1.0, std::fabs(b));
}

}  // namespace soco
