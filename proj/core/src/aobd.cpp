#include "soco/aobd.hpp"

#include <algorithm>
#include <cmath>

namespace soco {

AobdParams AobdParams::from_delta(double delta) {
  if (!(delta > 0) || !std::isfinite(delta)) throw ParameterError("delta must be > 0");
  return {delta / (2.0 + delta), 1.0 / delta};
}

bool AobdParams::in_guarantee_regime() const {
  return 2.0 * beta_lo * beta_hi + beta_lo >= 1.0 - 1e-12;
}

double aobd_lambda(const LineCost& f, double from, double to, double beta, bool upper) {
  auto point = [&](double lam) { return (1.0 - lam) * from + lam * to; };
  auto g = [&](double lam) {
    double x = point(lam);
    return std::fabs(x - from) - beta * f(x);
  };
  if (g(1.0) <= 0.0) return 1.0;
  double lo = 0.0, hi = 1.0;  // g(lo) <= 0 < g(hi)
  for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
    double mid = 0.5 * (lo + hi);
    (g(mid) <= 0.0 ? lo : hi) = mid;
  }
  return upper ? lo : hi;
}

AobdPolicy::AobdPolicy(AobdParams params) : params_(params) {
  if (!(params.beta_lo > 0) || !(params.beta_hi >= params.beta_lo) || !std::isfinite(params.beta_hi)) {
    throw ParameterError("balanced descent needs 0 < beta_lo <= beta_hi < inf");
  }
  if (!params.in_guarantee_regime()) {
    warnings_.push_back("2*beta_lo*beta_hi + beta_lo < 1: competitive bounds do not apply");
  }
}

void AobdPolicy::reset(const double& x0) {
  prev_ = x0;
  p_prev_ = x0;
  rounds_.clear();
}

double AobdPolicy::decide(const LineCost& f, const double& advice) {
  const double v = f.minimizer();
  const double lo = std::min({prev_, v, advice}) - 1.0;
  const double hi = std::max({prev_, v, advice}) + 1.0;
  if (!f.is_convex() || !sampled_midpoint_convex(f, lo, hi)) {
    throw ModelViolation("balanced descent requires convex hitting costs");
  }
  AobdRound r;
  r.p = RealLine{}.ftp_argmin(f, p_prev_, advice);
  p_prev_ = r.p;
  if (v == prev_) {
    r.lambda_lo = r.lambda_hi = r.lambda = 1.0;
    r.x = v;
  } else {
    r.lambda_hi = aobd_lambda(f, prev_, v, params_.beta_hi, true);
    r.lambda_lo = std::min(aobd_lambda(f, prev_, v, params_.beta_lo, false), r.lambda_hi);
    double target = (r.p - prev_) / (v - prev_);
    r.lambda = std::clamp(target, r.lambda_lo, r.lambda_hi);
    r.x = (1.0 - r.lambda) * prev_ + r.lambda * v;
  }
  rounds_.push_back(r);
  prev_ = r.x;
  return r.x;
}

Trajectory<double> run_aobd(const Instance<RealLine>& inst, const PredictionSeq<double>& preds,
                            AobdParams params) {
  if (inst.switching() != Switching::metric) {
    throw ParameterError("balanced descent is defined for metric switching costs");
  }
  AobdPolicy policy(params);
  return run_policy(policy, inst, preds);
}

}  // namespace soco
