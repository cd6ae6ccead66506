#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "soco/policy.hpp"

namespace soco {

enum class AosMode { follow_adv, follow_rob };

/// One round of the adaptive switching rule, as logged.
struct AosRound {
  std::size_t t = 0;
  AosMode mode = AosMode::follow_adv;  ///< stream x_t was taken from
  std::size_t stage = 1;               ///< k
  std::size_t stage_start = 1;         ///< T_k
  std::size_t switch_round = 0;        ///< M_k, 0 while not yet set in this stage
  double adv = 0.0;                    ///< f_t(p_t) + d(p_t, p_{t−1})
  double rob = 0.0;                    ///< f_t(v_t) + d(v_t, v_{t−1})
  double alg = 0.0;                    ///< f_t(x_t) + d(x_t, x_{t−1})
  /// Which test produced this round's decision: the advice test, the
  /// robust test, or one of the two unconditional steps after a switch.
  enum class Test { advice, robust, forced_rob, forced_adv } test = Test::advice;
  double lhs = 0.0;  ///< left side of the evaluated test (0 for forced steps)
  double rhs = 0.0;  ///< right side of the evaluated test
};

/// Full state history: both streams (index 0 holds x₀), per-round log and
/// the stage boundaries T_k and M_k.
template <class P>
struct AosLog {
  std::vector<P> p;
  std::vector<P> v;
  std::vector<P> x;  ///< x[0] = x₀
  std::vector<AosRound> rounds;
  std::vector<std::size_t> stage_starts;   ///< T_1 = 1, T_2, ...
  std::vector<std::size_t> switch_rounds;  ///< M_1, M_2, ...
};

/// Adaptive Online Switching. Runs FtP and the minimizer-follower side by
/// side and follows one of them according to two accumulated-cost tests:
///
///   advice test at t:  Σ_{T_k}^{t−1} Adv + Rob(t) + d(p_{t−1}, v_{t−1}) + d(v_t, p_t)
///                        ≥ (1+δ) Σ_{T_k}^{t} Adv          → x_t = p_t
///   robust test at t:  Σ_{M_k+1}^{t} Rob + d(v_t, p_t) − d(v_{M_k}, p_{M_k})
///                        ≤ (1+δ) Σ_{M_k+1}^{t} Adv + δ Σ_{T_k}^{t} Adv  → x_t = v_t
///
/// The first failure of the advice test sets M_k := t and takes one
/// unconditional step to v_t; the robust test is checked from t = M_k + 1
/// on. Its first failure sets T_{k+1} := t and takes one unconditional
/// step to p_t; the advice test resumes at T_{k+1} + 1.
template <DecisionSpace S>
class AosPolicy final : public OnlinePolicy<S> {
 public:
  using typename OnlinePolicy<S>::point_type;
  using typename OnlinePolicy<S>::cost_type;

  AosPolicy(S space, double delta) : space_(std::move(space)), delta_(delta) {
    if (!(delta > 0) || !std::isfinite(delta)) {
      throw ParameterError("delta must be > 0 (got " + std::to_string(delta) + ")");
    }
  }

  void reset(const point_type& x0) override {
    log_ = {};
    log_.p = {x0};
    log_.v = {x0};
    log_.x = {x0};
    log_.stage_starts = {1};
    phase_ = Phase::check_adv;
    stage_ = 1;
    stage_start_ = 1;
    switch_round_ = 0;
    adv_since_stage_ = 0.0;
    adv_since_switch_ = 0.0;
    rob_since_switch_ = 0.0;
    gap_at_switch_ = 0.0;
  }

  point_type decide(const cost_type& f, const point_type& advice) override {
    const std::size_t t = log_.rounds.size() + 1;
    const point_type& p_prev = log_.p.back();
    const point_type& v_prev = log_.v.back();
    const point_type& x_prev = log_.x.back();
    point_type p = space_.ftp_argmin(f, p_prev, advice);
    point_type v = f.minimizer();

    AosRound r;
    r.t = t;
    r.adv = f(p) + space_.distance(p, p_prev);
    r.rob = f(v) + space_.distance(v, v_prev);
    const double gap = space_.distance(v, p);

    bool take_adv = true;
    if (phase_ == Phase::check_adv) {
      r.test = AosRound::Test::advice;
      r.lhs = adv_since_stage_ + r.rob + space_.distance(p_prev, v_prev) + gap;
      adv_since_stage_ += r.adv;
      r.rhs = (1.0 + delta_) * adv_since_stage_;
      if (!(r.lhs >= r.rhs)) {
        r.test = AosRound::Test::forced_rob;
        switch_round_ = t;
        log_.switch_rounds.push_back(t);
        adv_since_switch_ = 0.0;
        rob_since_switch_ = 0.0;
        gap_at_switch_ = gap;
        phase_ = Phase::check_rob;
        take_adv = false;
      }
    } else {
      r.test = AosRound::Test::robust;
      adv_since_stage_ += r.adv;
      adv_since_switch_ += r.adv;
      rob_since_switch_ += r.rob;
      r.lhs = rob_since_switch_ + gap - gap_at_switch_;
      r.rhs = (1.0 + delta_) * adv_since_switch_ + delta_ * adv_since_stage_;
      take_adv = false;
      if (!(r.lhs <= r.rhs)) {
        r.test = AosRound::Test::forced_adv;
        ++stage_;
        stage_start_ = t;
        switch_round_ = 0;
        log_.stage_starts.push_back(t);
        adv_since_stage_ = r.adv;
        phase_ = Phase::check_adv;
        take_adv = true;
      }
    }

    point_type x = take_adv ? p : v;
    r.mode = take_adv ? AosMode::follow_adv : AosMode::follow_rob;
    r.stage = stage_;
    r.stage_start = stage_start_;
    r.switch_round = switch_round_;
    r.alg = f(x) + space_.distance(x, x_prev);
    log_.rounds.push_back(r);
    log_.p.push_back(p);
    log_.v.push_back(v);
    log_.x.push_back(x);
    return x;
  }

  std::string name() const override { return "aos"; }
  double delta() const { return delta_; }
  const AosLog<point_type>& log() const { return log_; }

 private:
  enum class Phase { check_adv, check_rob };

  S space_;
  double delta_;
  AosLog<point_type> log_;
  Phase phase_ = Phase::check_adv;
  std::size_t stage_ = 1;
  std::size_t stage_start_ = 1;
  std::size_t switch_round_ = 0;
  double adv_since_stage_ = 0.0;   // Σ_{T_k}^{t} Adv
  double adv_since_switch_ = 0.0;  // Σ_{M_k+1}^{t} Adv
  double rob_since_switch_ = 0.0;  // Σ_{M_k+1}^{t} Rob
  double gap_at_switch_ = 0.0;     // d(v_{M_k}, p_{M_k})
};

template <class P>
struct AosResult {
  Trajectory<P> trajectory;
  AosLog<P> log;
};

template <DecisionSpace S>
AosResult<typename S::point_type> run_aos(const Instance<S>& inst,
                                          const PredictionSeq<typename S::point_type>& preds,
                                          double delta) {
  AosPolicy<S> policy(inst.space(), delta);
  auto traj = run_policy(policy, inst, preds);
  return {std::move(traj), policy.log()};
}

/// Smallest slack over all rounds of the per-stage inequality
///   (1+2δ) Σ_{T_k}^{t} Adv − d(x_t, p_t) − [Σ_{T_k}^{t} Alg − d(v_{T_k−1}, p_{T_k−1})],
/// recomputed from the logged streams. Non-negative for a correct run.
template <DecisionSpace S>
double aos_stage_slack(const S& space, const AosLog<typename S::point_type>& log, double delta) {
  double worst = kInfinity;
  double alg_sum = 0.0, adv_sum = 0.0;
  std::size_t stage_start = 0;
  double entry_gap = 0.0;
  for (const AosRound& r : log.rounds) {
    if (r.stage_start != stage_start) {
      stage_start = r.stage_start;
      alg_sum = 0.0;
      adv_sum = 0.0;
      entry_gap = space.distance(log.v[stage_start - 1], log.p[stage_start - 1]);
    }
    alg_sum += r.alg;
    adv_sum += r.adv;
    double slack = (1.0 + 2.0 * delta) * adv_sum - space.distance(log.x[r.t], log.p[r.t]) -
                   (alg_sum - entry_gap);
    worst = std::fmin(worst, slack);
  }
  return worst;
}

}  // namespace soco
