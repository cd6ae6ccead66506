#pragma once

#include <string>
#include <vector>

#include "soco/policy.hpp"

namespace soco {

/// Step bounds of the balanced-descent rule. A round may move at most
/// β̄·f(x) and at least β̲·f(x) along the segment towards the minimizer.
struct AobdParams {
  double beta_lo = 0.0;  ///< β̲
  double beta_hi = 0.0;  ///< β̄

  /// β̄ = 1/δ, β̲ = δ/(2+δ).
  static AobdParams from_delta(double delta);
  /// 2β̲β̄ + β̲ ≥ 1, the regime in which the competitive guarantees hold.
  bool in_guarantee_regime() const;
};

struct AobdRound {
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  double lambda = 0.0;
  double p = 0.0;  ///< filtered advice
  double x = 0.0;
};

/// Advice-following balanced descent on ℝ with convex costs. Each round
/// restricts x_t to the segment x(λ) = (1−λ)x_{t−1} + λv_t with
/// λ ∈ [λ̲, λ̄], where λ̲ and λ̄ solve |x(λ) − x_{t−1}| = β·f(x(λ)) for
/// β = β̲ and β̄ (λ = 1 when no root exists), and picks the point of that
/// range closest to the filtered advice p_t (the FtP step from p_{t−1}).
class AobdPolicy final : public OnlinePolicy<RealLine> {
 public:
  /// Throws ParameterError unless 0 < β̲ ≤ β̄. Parameters outside the
  /// guarantee regime are accepted and flagged in warnings().
  explicit AobdPolicy(AobdParams params);

  void reset(const double& x0) override;
  double decide(const LineCost& f, const double& advice) override;
  std::string name() const override { return "aobd"; }

  const AobdParams& params() const { return params_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const std::vector<AobdRound>& rounds() const { return rounds_; }

 private:
  AobdParams params_;
  double prev_ = 0.0;
  double p_prev_ = 0.0;
  std::vector<std::string> warnings_;
  std::vector<AobdRound> rounds_;
};

/// Root of |x(λ) − from| − β·f(x(λ)) on [0, 1] by bisection to 1e−10
/// (at most 200 steps); 1 when the function is non-positive at λ = 1.
/// `upper` selects the side with g ≤ 0 (true) or g ≥ 0 (false).
double aobd_lambda(const LineCost& f, double from, double to, double beta, bool upper);

Trajectory<double> run_aobd(const Instance<RealLine>& inst, const PredictionSeq<double>& preds,
                            AobdParams params);

}  // namespace soco
