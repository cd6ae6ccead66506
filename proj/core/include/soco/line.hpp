#pragma once

#include <variant>
#include <vector>

namespace soco {

/// Continuous piecewise-linear function on ℝ given by knots, the values
/// at the knots and the slopes of the two unbounded end pieces.
/// Non-negativity forces left_slope ≤ 0 ≤ right_slope.
class PiecewiseLinear {
 public:
  PiecewiseLinear(std::vector<double> knots, std::vector<double> values, double left_slope,
                  double right_slope);

  /// weight·|x − center| + offset.
  static PiecewiseLinear abs(double weight, double center, double offset = 0.0);

  double operator()(double x) const;
  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }
  double left_slope() const { return left_slope_; }
  double right_slope() const { return right_slope_; }
  /// Slopes are non-decreasing from left to right.
  bool is_convex() const;
  /// Largest absolute slope.
  double lipschitz() const;
  /// Smallest knot attaining the minimum.
  double minimizer() const;

 private:
  std::vector<double> knots_;
  std::vector<double> values_;
  double left_slope_;
  double right_slope_;
};

/// (curvature/2)·(x − center)² + offset with curvature > 0.
struct Quadratic {
  double curvature;
  double center;
  double offset = 0.0;

  double operator()(double x) const {
    double dx = x - center;
    return 0.5 * curvature * dx * dx + offset;
  }
};

/// Hitting cost on the real line.
class LineCost {
 public:
  LineCost(PiecewiseLinear f) : f_(std::move(f)) {}  // NOLINT(google-explicit-constructor)
  LineCost(Quadratic f);                             // NOLINT(google-explicit-constructor)

  double operator()(double x) const;
  double minimizer() const;
  bool is_piecewise_linear() const { return std::holds_alternative<PiecewiseLinear>(f_); }
  const PiecewiseLinear* as_piecewise_linear() const { return std::get_if<PiecewiseLinear>(&f_); }
  const Quadratic* as_quadratic() const { return std::get_if<Quadratic>(&f_); }
  /// Lipschitz constant of the restriction to [lo, hi].
  double lipschitz_on(double lo, double hi) const;
  /// Convexity by construction (quadratic) or by slope order (piecewise linear).
  bool is_convex() const;

 private:
  std::variant<PiecewiseLinear, Quadratic> f_;
};

/// Midpoint convexity test on `samples` evenly spaced pairs in [lo, hi].
/// Returns false at the first violation larger than tol.
bool sampled_midpoint_convex(const LineCost& f, double lo, double hi, int samples = 64,
                             double tol = 1e-12);

/// ℝ with d(x, y) = |x − y|.
class RealLine {
 public:
  using point_type = double;
  using cost_type = LineCost;

  double distance(double a, double b) const;
  bool contains(double x) const;
  /// Smallest minimizer of f(p) + |p − prev| + |p − advice|, found by
  /// enumerating the finitely many candidate points of the objective
  /// (kinks for piecewise-linear costs, stationary points of each smooth
  /// piece for quadratics). Exact for both cost families.
  double ftp_argmin(const LineCost& f, double prev, double advice) const;
};

}  // namespace soco
