#include "soco/plane.hpp"

#include <algorithm>
#include <array>

#include "soco/error.hpp"

namespace soco {

ConeCost::ConeCost(double alpha, Vec2 vertex, Vec2 normal, double penalty)
    : alpha_(alpha), vertex_(vertex), penalty_(penalty) {
  if (!(alpha > 0)) throw ParameterError("cone cost needs alpha > 0");
  if (!(penalty >= 0)) throw ParameterError("cone penalty must be >= 0");
  double n = norm(normal);
  if (!(n > 0)) throw ParameterError("cone normal must be non-zero");
  normal_ = (1.0 / n) * normal;
}

double ConeCost::operator()(Vec2 z) const {
  Vec2 r = z - vertex_;
  return alpha_ * norm(r) + penalty_ * std::fabs(dot(r, normal_));
}

Vec2 Plane::ftp_argmin(const ConeCost& f, Vec2 prev, Vec2 advice) const {
  if (f.penalty() < 2.0) {
    throw ModelViolation("plane filtering oracle requires cone penalty >= 2");
  }
  const Vec2 v = f.minimizer();
  const Vec2 u = f.axis();
  auto at = [&](double s) { return v + s * u; };
  auto objective = [&](double s) {
    Vec2 z = at(s);
    return f(z) + norm(z - prev) + norm(z - advice);
  };
  std::array<double, 3> anchors{0.0, dot(prev - v, u), dot(advice - v, u)};
  double lo = *std::min_element(anchors.begin(), anchors.end());
  double hi = *std::max_element(anchors.begin(), anchors.end());
  // Golden-section search; the objective is convex along the line.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = objective(c), fd = objective(d);
  for (int it = 0; it < 200 && (b - a) > 1e-13 * std::fmax(1.0, std::fabs(a) + std::fabs(b)); ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
  }
  double best = 0.5 * (a + b);
  double best_val = objective(best);
  for (double s : anchors) {
    double val = objective(s);
    if (val <= best_val) {
      best = s;
      best_val = val;
    }
  }
  return at(best);
}

}  // namespace soco
