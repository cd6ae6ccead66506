#pragma once

#include <cmath>

namespace soco {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// α‖z − v‖ + L·|⟨z − v, n⟩|: a cone around the vertex v plus a steep
/// penalty for leaving the line through v orthogonal to the unit normal n.
/// Globally α-polyhedral with unique minimizer v.
class ConeCost {
 public:
  ConeCost(double alpha, Vec2 vertex, Vec2 normal, double penalty);

  double operator()(Vec2 z) const;
  Vec2 minimizer() const { return vertex_; }
  double alpha() const { return alpha_; }
  Vec2 normal() const { return normal_; }
  /// Unit direction of the zero-penalty line.
  Vec2 axis() const { return {-normal_.y, normal_.x}; }
  double penalty() const { return penalty_; }

 private:
  double alpha_;
  Vec2 vertex_;
  Vec2 normal_;
  double penalty_;
};

/// ℝ² with the Euclidean metric.
class Plane {
 public:
  using point_type = Vec2;
  using cost_type = ConeCost;

  double distance(Vec2 a, Vec2 b) const { return norm(a - b); }
  bool contains(Vec2 z) const { return std::isfinite(z.x) && std::isfinite(z.y); }

  /// Minimizer of f(p) + ‖p − prev‖ + ‖p − advice‖. With penalty ≥ 2 the
  /// minimizer lies on the zero-penalty line (projecting onto it lowers
  /// the penalty faster than it can raise the two distance terms), so the
  /// search is a convex 1-D golden-section search along that line.
  /// Throws ModelViolation when penalty < 2.
  Vec2 ftp_argmin(const ConeCost& f, Vec2 prev, Vec2 advice) const;
};

}  // namespace soco
