#include "soco/report.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

#include "soco/adversarial.hpp"
#include "soco/aobd.hpp"
#include "soco/aos.hpp"
#include "soco/offline.hpp"

namespace soco {

Algorithm parse_algorithm(const std::string& name) {
  if (name == "aos") return Algorithm::aos;
  if (name == "ftp") return Algorithm::ftp;
  if (name == "aobd") return Algorithm::aobd;
  if (name == "greedy") return Algorithm::greedy;
  if (name == "blind") return Algorithm::blind;
  throw ConfigError("unknown algorithm '" + name + "' (expected aos, ftp, aobd, greedy or blind)");
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::aos: return "aos";
    case Algorithm::ftp: return "ftp";
    case Algorithm::aobd: return "aobd";
    case Algorithm::greedy: return "greedy";
    case Algorithm::blind: return "blind";
  }
  return "?";
}

bool EpisodeReport::all_checks_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Check make_check(std::string id, double lhs, double rhs, std::string note) {
  return {std::move(id), lhs, rhs, leq_tol(lhs, rhs), std::move(note)};
}

double empirical_alpha(const Instance<DiscreteSpace>& inst) {
  const DiscreteSpace& s = inst.space();
  double alpha = kInfinity;
  for (const TableCost& f : inst.costs()) {
    const std::size_t v = f.minimizer();
    for (std::size_t u = 0; u < s.size(); ++u) {
      if (u != v) alpha = std::min(alpha, (f(u) - f(v)) / s.distance(u, v));
    }
  }
  return std::isfinite(alpha) ? std::max(alpha, 0.0) : alpha;
}

namespace {

struct Offline {
  std::optional<double> cost;
  std::optional<EtaAccuracy> eta;
  std::optional<double> error_bound;
  std::string method = "none";
};

AobdParams aobd_params(const EpisodeConfig& cfg) {
  AobdParams p = (cfg.beta_lo && cfg.beta_hi) ? AobdParams{*cfg.beta_lo, *cfg.beta_hi}
                                                : AobdParams::from_delta(cfg.delta);
  if (cfg.beta_lo) p.beta_lo = *cfg.beta_lo;
  if (cfg.beta_hi) p.beta_hi = *cfg.beta_hi;
  return p;
}

void validate(const EpisodeConfig& cfg) {
  if (!(cfg.delta > 0) || !std::isfinite(cfg.delta)) {
    throw ParameterError("delta must be > 0 (got " + std::to_string(cfg.delta) + ")");
  }
  if (!(cfg.grid_h > 0) || !std::isfinite(cfg.grid_h)) throw ParameterError("grid spacing must be > 0");
}

template <DecisionSpace S>
EpisodeReport assemble(const Instance<S>& inst, const PredictionSeq<typename S::point_type>& preds,
                       const EpisodeConfig& cfg, const Offline& off, std::optional<double> alpha) {
  validate(cfg);
  check_predictions(inst, preds);
  const bool metric = inst.switching() == Switching::metric;
  if (!metric && (cfg.algorithm == Algorithm::aos || cfg.algorithm == Algorithm::aobd)) {
    throw ConfigError(to_string(cfg.algorithm) + " needs metric switching");
  }

  EpisodeReport r;
  r.algorithm = to_string(cfg.algorithm);
  r.T = inst.horizon();
  r.adv_cost = run_ftp(inst, preds).total;
  r.rob_cost = run_greedy(inst).total;
  r.blind_cost = run_blind(inst, preds).total;
  r.opt_cost = off.cost;
  r.opt_method = off.method;
  r.error_bound = off.error_bound;
  r.alpha = alpha;

  AobdParams ap{};
  switch (cfg.algorithm) {
    case Algorithm::aos:
      r.params.emplace_back("delta", cfg.delta);
      r.alg_cost = run_aos(inst, preds, cfg.delta).trajectory.total;
      break;
    case Algorithm::ftp: r.alg_cost = r.adv_cost; break;
    case Algorithm::greedy: r.alg_cost = r.rob_cost; break;
    case Algorithm::blind: r.alg_cost = r.blind_cost; break;
    case Algorithm::aobd:
      if constexpr (std::is_same_v<S, RealLine>) {
        ap = aobd_params(cfg);
        r.params.emplace_back("beta_lo", ap.beta_lo);
        r.params.emplace_back("beta_hi", ap.beta_hi);
        AobdPolicy policy(ap);
        r.alg_cost = run_policy(policy, inst, preds).total;
        r.warnings = policy.warnings();
      } else {
        throw ConfigError("aobd runs on the real line only");
      }
      break;
  }

  if (off.eta) {
    r.eta = off.eta->eta;
    r.eta_degenerate = off.eta->degenerate;
  }
  const double slack = off.error_bound.value_or(0.0);
  if (off.cost) {
    r.measured_cr = measured_ratio(r.alg_cost, *off.cost);
    r.checks.push_back(make_check("opt.lower_bound", *off.cost - slack, r.alg_cost,
                                  "the offline optimum never exceeds the algorithm"));
  }

  if (metric) {
    std::string approx;
    if constexpr (std::is_same_v<S, Plane>) approx = "FtP step solved by golden-section search";
    r.checks.push_back(make_check("ftp.vs_blind", r.adv_cost, r.blind_cost, approx));
    if (off.cost && off.eta && std::isfinite(off.eta->eta)) {
      r.checks.push_back(make_check("ftp.vs_opt", r.adv_cost, (1.0 + 2.0 * off.eta->eta) * *off.cost,
                                    "FtP <= (1+2 eta) OPT"));
    }
  }

  if (cfg.algorithm == Algorithm::aos) {
    r.checks.push_back(make_check("aos.vs_ftp", r.alg_cost, (1.0 + 2.0 * cfg.delta) * r.adv_cost,
                                  "AOS <= (1+2 delta) FtP"));
    if (alpha && *alpha > 0) {
      const double a = admissible_alpha(*alpha, cfg.delta);
      r.params.emplace_back("alpha_admissible", a);
      if (2.0 - a - cfg.delta * (1.0 + a) > 0) {
        const double m = robustness_multiplier(a, cfg.delta);
        r.checks.push_back(make_check("aos.vs_greedy", r.alg_cost, m * r.rob_cost,
                                      "AOS <= ((4U+4)/delta + 2U + 5) greedy"));
      } else {
        r.warnings.push_back("2 - alpha - delta(1+alpha) <= 0: greedy comparison skipped");
      }
    }
  }
  if (cfg.algorithm == Algorithm::aobd) {
    r.checks.push_back(make_check("aobd.vs_ftp", r.alg_cost,
                                  (1.0 + (2.0 + 1.0 / ap.beta_hi) * ap.beta_lo) * r.adv_cost,
                                  "AOBD <= (1+(2+1/beta_hi) beta_lo) FtP"));
    if (off.cost) {
      r.checks.push_back(make_check("aobd.vs_opt", r.alg_cost,
                                    (1.0 + (2.0 + 1.0 / ap.beta_lo) * ap.beta_hi) * (*off.cost + slack),
                                    "AOBD <= (1+(2+1/beta_lo) beta_hi) (OPT + grid error)"));
    }
  }

  const double eta_for_bounds = (off.eta && std::isfinite(off.eta->eta)) ? off.eta->eta : kInfinity;
  double alpha_for_bounds = std::numeric_limits<double>::quiet_NaN();
  if (alpha && *alpha > 0) alpha_for_bounds = admissible_alpha(*alpha, cfg.delta);
  const AobdParams bp = cfg.algorithm == Algorithm::aobd ? ap : AobdParams::from_delta(cfg.delta);
  BoundSet bs = applicable_bounds(alpha_for_bounds, cfg.delta, eta_for_bounds, bp.beta_lo, bp.beta_hi);
  r.bounds = std::move(bs.reports);
  r.bounds_skipped = std::move(bs.skipped);
  return r;
}

}  // namespace

EpisodeReport run_episode(const Instance<DiscreteSpace>& inst, const PredictionSeq<std::size_t>& preds,
                          const EpisodeConfig& cfg) {
  check_predictions(inst, preds);
  const Trajectory<std::size_t> opt = opt_dp_finite(inst);
  Offline off;
  off.cost = opt.total;
  off.eta = eta_accuracy(inst, preds, opt);
  off.method = "exact_dp";
  std::optional<double> alpha = inst.alpha();
  if (!alpha) {
    const double a = empirical_alpha(inst);
    if (a > 0 && std::isfinite(a)) alpha = a;
  }
  return assemble(inst, preds, cfg, off, alpha);
}

EpisodeReport run_episode(const Instance<RealLine>& inst, const PredictionSeq<double>& preds,
                          const EpisodeConfig& cfg) {
  validate(cfg);
  check_predictions(inst, preds);
  const GridOptimum g = opt_dp_grid(inst, default_grid(inst, cfg.grid_h));
  Offline off;
  off.cost = g.trajectory.total;
  off.eta = eta_accuracy(inst, preds, g.trajectory);
  off.error_bound = g.error_bound;
  off.method = "grid_dp";
  return assemble(inst, preds, cfg, off, inst.alpha());
}

EpisodeReport run_episode(const Instance<Plane>& inst, const PredictionSeq<Vec2>& preds,
                          const EpisodeConfig& cfg) {
  std::optional<double> alpha = inst.alpha();
  if (!alpha) {
    double a = kInfinity;
    for (const ConeCost& f : inst.costs()) a = std::min(a, f.alpha());
    alpha = a;
  }
  return assemble(inst, preds, cfg, Offline{}, alpha);
}

}  // namespace soco
