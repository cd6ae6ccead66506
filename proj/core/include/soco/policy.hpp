#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "soco/instance.hpp"

namespace soco {

/// An online algorithm: sees (f_t, x̃_t) one round at a time and commits
/// to x_t before the next round is revealed.
template <DecisionSpace S>
class OnlinePolicy {
 public:
  using point_type = typename S::point_type;
  using cost_type = typename S::cost_type;

  virtual ~OnlinePolicy() = default;
  /// Start a new episode from x₀.
  virtual void reset(const point_type& x0) = 0;
  virtual point_type decide(const cost_type& f, const point_type& advice) = 0;
  virtual std::string name() const = 0;
};

/// Drive a policy through a full instance and evaluate its decisions.
template <DecisionSpace S>
Trajectory<typename S::point_type> run_policy(OnlinePolicy<S>& policy, const Instance<S>& inst,
                                              const PredictionSeq<typename S::point_type>& preds) {
  check_predictions(inst, preds);
  policy.reset(inst.x0());
  std::vector<typename S::point_type> xs;
  xs.reserve(inst.horizon());
  for (std::size_t t = 1; t <= inst.horizon(); ++t) xs.push_back(policy.decide(inst.cost(t), preds[t - 1]));
  return evaluate(inst, std::move(xs));
}

/// Follow the Prediction: p_t = argmin_p f_t(p) + d(p, p_{t−1}) + d(p, x̃_t), p₀ = x₀.
template <DecisionSpace S>
class FtpPolicy final : public OnlinePolicy<S> {
 public:
  using typename OnlinePolicy<S>::point_type;
  using typename OnlinePolicy<S>::cost_type;

  explicit FtpPolicy(S space) : space_(std::move(space)) {}
  void reset(const point_type& x0) override { prev_ = x0; }
  point_type decide(const cost_type& f, const point_type& advice) override {
    prev_ = space_.ftp_argmin(f, prev_, advice);
    return prev_;
  }
  std::string name() const override { return "ftp"; }

 private:
  S space_;
  point_type prev_{};
};

/// Moves to the minimizer v_t every round.
template <DecisionSpace S>
class GreedyPolicy final : public OnlinePolicy<S> {
 public:
  using typename OnlinePolicy<S>::point_type;
  using typename OnlinePolicy<S>::cost_type;

  void reset(const point_type&) override {}
  point_type decide(const cost_type& f, const point_type&) override { return f.minimizer(); }
  std::string name() const override { return "greedy"; }
};

/// Outputs the advice verbatim.
template <DecisionSpace S>
class BlindPolicy final : public OnlinePolicy<S> {
 public:
  using typename OnlinePolicy<S>::point_type;
  using typename OnlinePolicy<S>::cost_type;

  void reset(const point_type&) override {}
  point_type decide(const cost_type&, const point_type& advice) override { return advice; }
  std::string name() const override { return "blind"; }
};

/// Wraps a user-supplied single-round rule x_t = g(x_{t−1}, x̃_t, f_t).
template <DecisionSpace S>
class MemorylessPolicy final : public OnlinePolicy<S> {
 public:
  using typename OnlinePolicy<S>::point_type;
  using typename OnlinePolicy<S>::cost_type;
  using Rule = std::function<point_type(const point_type& prev, const point_type& advice, const cost_type& f)>;

  MemorylessPolicy(std::string name, Rule rule) : name_(std::move(name)), rule_(std::move(rule)) {}
  void reset(const point_type& x0) override { prev_ = x0; }
  point_type decide(const cost_type& f, const point_type& advice) override {
    prev_ = rule_(prev_, advice, f);
    return prev_;
  }
  std::string name() const override { return name_; }

 private:
  std::string name_;
  Rule rule_;
  point_type prev_{};
};

template <DecisionSpace S>
Trajectory<typename S::point_type> run_ftp(const Instance<S>& inst,
                                           const PredictionSeq<typename S::point_type>& preds) {
  FtpPolicy<S> p(inst.space());
  return run_policy(p, inst, preds);
}

template <DecisionSpace S>
Trajectory<typename S::point_type> run_greedy(const Instance<S>& inst) {
  GreedyPolicy<S> p;
  PredictionSeq<typename S::point_type> dummy(inst.horizon(), inst.x0());
  return run_policy(p, inst, dummy);
}

template <DecisionSpace S>
Trajectory<typename S::point_type> run_blind(const Instance<S>& inst,
                                             const PredictionSeq<typename S::point_type>& preds) {
  BlindPolicy<S> p;
  return run_policy(p, inst, preds);
}

}  // namespace soco
