#include "soco/line.hpp"

#include <algorithm>
#include <cmath>

#include "soco/error.hpp"

namespace soco {

PiecewiseLinear::PiecewiseLinear(std::vector<double> knots, std::vector<double> values,
                                 double left_slope, double right_slope)
    : knots_(std::move(knots)), values_(std::move(values)), left_slope_(left_slope),
      right_slope_(right_slope) {
  if (knots_.empty() || knots_.size() != values_.size()) {
    throw ParameterError("piecewise-linear cost needs matching non-empty knots and values");
  }
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i] > knots_[i - 1])) throw ParameterError("knots must be strictly increasing");
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0) throw ParameterError("piecewise-linear values must be finite and >= 0");
  }
  if (!(left_slope_ <= 0) || !(right_slope_ >= 0)) {
    throw ParameterError("end slopes must satisfy left <= 0 <= right for a non-negative cost");
  }
}

PiecewiseLinear PiecewiseLinear::abs(double weight, double center, double offset) {
  if (!(weight > 0)) throw ParameterError("abs cost weight must be positive");
  return PiecewiseLinear({center}, {offset}, -weight, weight);
}

double PiecewiseLinear::operator()(double x) const {
  if (x <= knots_.front()) return values_.front() + left_slope_ * (x - knots_.front());
  if (x >= knots_.back()) return values_.back() + right_slope_ * (x - knots_.back());
  auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - knots_.begin());
  std::size_t lo = hi - 1;
  double w = (x - knots_[lo]) / (knots_[hi] - knots_[lo]);
  return values_[lo] + w * (values_[hi] - values_[lo]);
}

bool PiecewiseLinear::is_convex() const {
  double prev = left_slope_;
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    double s = (values_[i] - values_[i - 1]) / (knots_[i] - knots_[i - 1]);
    if (s < prev) return false;
    prev = s;
  }
  return right_slope_ >= prev;
}

double PiecewiseLinear::lipschitz() const {
  double l = std::max(-left_slope_, right_slope_);
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    l = std::max(l, std::fabs((values_[i] - values_[i - 1]) / (knots_[i] - knots_[i - 1])));
  }
  return l;
}

double PiecewiseLinear::minimizer() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (values_[i] < values_[best]) best = i;
  }
  return knots_[best];
}

LineCost::LineCost(Quadratic f) : f_(f) {
  if (!(f.curvature > 0) || !std::isfinite(f.center) || !(f.offset >= 0)) {
    throw ParameterError("quadratic cost needs curvature > 0, finite center, offset >= 0");
  }
}

double LineCost::operator()(double x) const {
  return std::visit([x](const auto& f) { return f(x); }, f_);
}

double LineCost::minimizer() const {
  if (const auto* q = as_quadratic()) return q->center;
  return std::get<PiecewiseLinear>(f_).minimizer();
}

double LineCost::lipschitz_on(double lo, double hi) const {
  if (const auto* q = as_quadratic()) {
    return q->curvature * std::max(std::fabs(lo - q->center), std::fabs(hi - q->center));
  }
  return std::get<PiecewiseLinear>(f_).lipschitz();
}

bool LineCost::is_convex() const {
  if (const auto* p = as_piecewise_linear()) return p->is_convex();
  return true;
}

bool sampled_midpoint_convex(const LineCost& f, double lo, double hi, int samples, double tol) {
  if (!(hi > lo) || samples < 2) return true;
  const double step = (hi - lo) / samples;
  for (int i = 0; i <= samples; ++i) {
    for (int j = i + 2; j <= samples; j += 2) {
      double a = lo + i * step;
      double b = lo + j * step;
      double mid = 0.5 * (a + b);
      double chord = 0.5 * (f(a) + f(b));
      if (f(mid) > chord + tol * std::fmax(1.0, std::fabs(chord))) return false;
    }
  }
  return true;
}

double RealLine::distance(double a, double b) const { return std::fabs(a - b); }

bool RealLine::contains(double x) const { return std::isfinite(x); }

double RealLine::ftp_argmin(const LineCost& f, double prev, double advice) const {
  std::vector<double> candidates{prev, advice};
  if (const auto* p = f.as_piecewise_linear()) {
    candidates.insert(candidates.end(), p->knots().begin(), p->knots().end());
  } else {
    // On each interval between the kinks prev/advice the objective is
    // q(p) ± 1 ± 1 with a single stationary point center − s/curvature.
    const Quadratic& q = *f.as_quadratic();
    for (double s : {-2.0, 0.0, 2.0}) candidates.push_back(q.center - s / q.curvature);
  }
  std::sort(candidates.begin(), candidates.end());
  double best = candidates.front();
  double best_val = f(best) + std::fabs(best - prev) + std::fabs(best - advice);
  for (double c : candidates) {
    double val = f(c) + std::fabs(c - prev) + std::fabs(c - advice);
    if (val < best_val) {
      best = c;
      best_val = val;
    }
  }
  return best;
}

}  // namespace soco
