#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

#include "soco/cost.hpp"
#include "soco/discrete_space.hpp"
#include "soco/error.hpp"
#include "soco/line.hpp"
#include "soco/plane.hpp"

namespace soco {

/// A metric decision space together with its hitting-cost family and an
/// exact (or documented) oracle for the filtering step.
template <class S>
concept DecisionSpace = requires(const S& s, const typename S::point_type& p,
                                 const typename S::cost_type& f) {
  { s.distance(p, p) } -> std::convertible_to<double>;
  { s.contains(p) } -> std::convertible_to<bool>;
  { f(p) } -> std::convertible_to<double>;
  { f.minimizer() } -> std::convertible_to<typename S::point_type>;
  { s.ftp_argmin(f, p, p) } -> std::same_as<typename S::point_type>;
};

enum class Switching {
  metric,        ///< d(x_t, x_{t−1})
  half_squared,  ///< ½(x_t − x_{t−1})², real line only
};

/// (x₀, f₁..f_T) over a decision space. Immutable after construction.
template <DecisionSpace S>
class Instance {
 public:
  using space_type = S;
  using point_type = typename S::point_type;
  using cost_type = typename S::cost_type;

  Instance(S space, point_type x0, std::vector<cost_type> costs,
           Switching switching = Switching::metric, std::optional<double> alpha = std::nullopt)
      : space_(std::move(space)), x0_(std::move(x0)), costs_(std::move(costs)),
        switching_(switching), alpha_(alpha) {
    if (costs_.empty()) throw ParameterError("an instance needs T >= 1 rounds");
    if (!space_.contains(x0_)) throw InvalidDecision("start point is outside the decision space");
    if (switching_ == Switching::half_squared && !std::is_same_v<S, RealLine>) {
      throw ParameterError("half-squared switching is only defined on the real line");
    }
    if (alpha_ && !(*alpha_ > 0)) throw ParameterError("declared alpha must be positive");
  }

  const S& space() const { return space_; }
  const point_type& x0() const { return x0_; }
  const std::vector<cost_type>& costs() const { return costs_; }
  /// Hitting cost of round t, 1-based as in the model.
  const cost_type& cost(std::size_t t) const { return costs_[t - 1]; }
  std::size_t horizon() const { return costs_.size(); }
  Switching switching() const { return switching_; }
  std::optional<double> alpha() const { return alpha_; }

  /// Switching cost between consecutive decisions.
  double move_cost(const point_type& from, const point_type& to) const {
    if (switching_ == Switching::half_squared) {
      if constexpr (std::is_same_v<S, RealLine>) {
        double d = to - from;
        return 0.5 * d * d;
      }
    }
    return space_.distance(from, to);
  }

  /// v_t; v₀ is defined as x₀.
  point_type minimizer(std::size_t t) const { return t == 0 ? x0_ : costs_[t - 1].minimizer(); }

 private:
  S space_;
  point_type x0_;
  std::vector<cost_type> costs_;
  Switching switching_;
  std::optional<double> alpha_;
};

/// Suggested decisions x̃₁..x̃_T.
template <class P>
using PredictionSeq = std::vector<P>;

template <DecisionSpace S>
void check_predictions(const Instance<S>& inst, const PredictionSeq<typename S::point_type>& preds) {
  if (preds.size() != inst.horizon()) {
    throw ParameterError("prediction sequence length " + std::to_string(preds.size()) +
                         " does not match horizon " + std::to_string(inst.horizon()));
  }
  for (const auto& p : preds) {
    if (!inst.space().contains(p)) throw InvalidDecision("prediction outside the decision space");
  }
}

struct RoundCost {
  double hit = 0.0;
  double move = 0.0;
  double total() const { return hit + move; }
};

/// Decisions x₁..x_T with the per-round (hit, switch) ledger.
template <class P>
struct Trajectory {
  std::vector<P> decisions;
  std::vector<RoundCost> ledger;
  double total = 0.0;

  std::size_t horizon() const { return decisions.size(); }
  /// Σ over rounds first..last (1-based, inclusive) of hit + switch.
  double range_total(std::size_t first, std::size_t last) const {
    double s = 0.0;
    for (std::size_t t = first; t <= last; ++t) s += ledger[t - 1].total();
    return s;
  }
};

/// Cost ledger of a decision sequence. Infinite hitting costs are valid and
/// make the total infinite.
template <DecisionSpace S>
Trajectory<typename S::point_type> evaluate(const Instance<S>& inst,
                                            std::vector<typename S::point_type> decisions) {
  if (decisions.size() != inst.horizon()) {
    throw ParameterError("trajectory length does not match horizon");
  }
  Trajectory<typename S::point_type> traj;
  traj.ledger.reserve(decisions.size());
  auto prev = inst.x0();
  for (std::size_t t = 1; t <= decisions.size(); ++t) {
    const auto& x = decisions[t - 1];
    if (!inst.space().contains(x)) {
      throw InvalidDecision("decision of round " + std::to_string(t) + " is outside the space");
    }
    RoundCost rc{inst.cost(t)(x), inst.move_cost(prev, x)};
    traj.ledger.push_back(rc);
    traj.total += rc.total();
    prev = x;
  }
  traj.decisions = std::move(decisions);
  return traj;
}

struct EtaAccuracy {
  double eta = 0.0;
  double distance_sum = 0.0;
  double opt_cost = 0.0;
  /// OPT = 0 with a non-zero distance sum; eta is then +inf.
  bool degenerate = false;
};

/// Smallest η with Σ_t d(o_t, x̃_t) ≤ η·Σ_t Opt(t).
template <DecisionSpace S>
EtaAccuracy eta_accuracy(const Instance<S>& inst, const PredictionSeq<typename S::point_type>& preds,
                         const Trajectory<typename S::point_type>& opt) {
  check_predictions(inst, preds);
  if (opt.horizon() != inst.horizon()) throw ParameterError("optimum has the wrong horizon");
  EtaAccuracy r;
  for (std::size_t t = 0; t < preds.size(); ++t) {
    r.distance_sum += inst.space().distance(opt.decisions[t], preds[t]);
  }
  r.opt_cost = opt.total;
  if (opt.total > 0) {
    r.eta = r.distance_sum / opt.total;
  } else if (r.distance_sum > 0) {
    r.eta = kInfinity;
    r.degenerate = true;
  }
  return r;
}

template <class P>
struct PolyhedralCheck {
  bool pass = true;
  /// min over checked x of f(x) − f(v) − α·d(x, v); ≥ 0 on success.
  double worst_residual = kInfinity;
  P worst_point{};
  std::size_t points_checked = 0;
};

/// Sampling plan for continuous spaces: `count` points uniform in a box
/// of half-width `radius` around the minimizer, drawn from mt19937_64(seed).
struct SamplePlan {
  std::size_t count = 2000;
  std::uint64_t seed = 20240601;
  double radius = 10.0;
};

namespace detail {
inline double sample_offset(std::mt19937_64& rng, double radius) {
  return std::uniform_real_distribution<double>(-radius, radius)(rng);
}
}  // namespace detail

/// f(x) ≥ f(v) + α·d(x, v): exhaustive on discrete spaces, sampled otherwise.
template <DecisionSpace S>
PolyhedralCheck<typename S::point_type> check_polyhedral(const S& space, const typename S::cost_type& f,
                                                         double alpha, const SamplePlan& plan = {}) {
  if (!(alpha > 0)) throw ParameterError("polyhedral constant must be positive");
  using P = typename S::point_type;
  PolyhedralCheck<P> out;
  const P v = f.minimizer();
  const double fv = f(v);
  auto visit = [&](const P& x) {
    double r = f(x) - fv - alpha * space.distance(x, v);
    if (std::isnan(r)) r = kInfinity;  // inf − inf on forbidden points
    ++out.points_checked;
    if (r < out.worst_residual) {
      out.worst_residual = r;
      out.worst_point = x;
    }
  };
  if constexpr (std::is_same_v<S, DiscreteSpace>) {
    for (std::size_t x = 0; x < space.size(); ++x) visit(x);
  } else {
    std::mt19937_64 rng(plan.seed);
    for (std::size_t i = 0; i < plan.count; ++i) {
      if constexpr (std::is_same_v<S, RealLine>) {
        visit(v + detail::sample_offset(rng, plan.radius));
      } else {
        double dx = detail::sample_offset(rng, plan.radius);
        double dy = detail::sample_offset(rng, plan.radius);
        visit(v + Vec2{dx, dy});
      }
    }
  }
  out.pass = out.worst_residual >= -kCostTolerance;
  return out;
}

struct MetricCheck {
  bool pass = true;
  double worst_violation = 0.0;  ///< largest d(x,z) − d(x,y) − d(y,z), or symmetry/identity defect
  std::size_t x = 0, y = 0, z = 0;
  std::size_t triples_checked = 0;
};

/// Metric axioms on a discrete space: exhaustive over all triples when the
/// space has ≤ 64 points, otherwise `sampled_triples` random triples.
MetricCheck check_metric_axioms(const DiscreteSpace& space, std::size_t sampled_triples = 200000,
                                std::uint64_t seed = 7);

}  // namespace soco
