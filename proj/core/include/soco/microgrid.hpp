#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "soco/instance.hpp"

namespace soco::microgrid {

/// Six 2 MW generators with on/off commitment u ∈ {0,1}⁶ (bit i is
/// generator i), fuel costs c, shortfall penalty γ and cycling cost
/// d(u, u′) = switch_weight·‖u − u′‖₁.
struct Params {
  std::vector<double> fuel{1.0, 1.2, 1.4, 1.6, 1.8, 2.0};
  double shortfall_penalty = 3.0;
  double generator_size = 2.0;
  double switch_weight = 8.0;
  double load_lo = -8.0;
  double load_hi = 12.0;

  /// Throws ParameterError unless the fuel costs are positive and pairwise
  /// distinct, the penalty exceeds every fuel cost and sizes are positive.
  void validate() const;
  int generators() const { return static_cast<int>(fuel.size()); }
};

/// f(u) = c·u + γ·max(ℓ − size·|u|, 0).
double dispatch_cost(const Params& p, std::size_t mask, double load);

/// Net-load generator: mean + amplitude·sin(2πt/period) plus AR(1) noise
/// e_t = φ e_{t−1} + ε_t, ε_t ~ N(0, innovation_sd²), e₀ = 0, clipped to
/// [lo, hi]. All randomness comes from mt19937_64(seed).
struct NetLoadModel {
  double mean = 2.0;
  double amplitude = 5.0;
  double period = 96.0;
  double phi = 0.9;
  double innovation_sd = 1.0;
  double lo = -8.0;
  double hi = 12.0;
};

struct NetLoadTrace {
  std::vector<double> load;
  std::uint64_t seed = 0;
  NetLoadModel model;
};

NetLoadTrace gen_netload(std::uint64_t seed, std::size_t T, const NetLoadModel& model = {});

struct DispatchInstance {
  Instance<DiscreteSpace> instance;
  std::vector<double> alpha_per_round;  ///< min_{u≠v_t} (f_t(u) − f_t(v_t))/d(u, v_t)
  double alpha = 0.0;                   ///< min over rounds
};

/// Instance on the cube {0,1}⁶ with x₀ = all generators off.
DispatchInstance build_instance(const NetLoadTrace& trace, const Params& params = {});

enum class PerturbMode { gaussian, bias };

/// Noise applied to the predictor's forecasts of future loads (never to
/// the realized current load).
struct Perturbation {
  PerturbMode mode = PerturbMode::gaussian;
  double value = 0.0;  ///< σ ≥ 0 for gaussian, μ for bias

  double sigma() const { return mode == PerturbMode::gaussian ? value : 0.0; }
  double mu() const { return mode == PerturbMode::bias ? value : 0.0; }
};

/// Receding-horizon predictor standing in for a learned dispatch policy.
/// At round t it sees the realized ℓ_t and forecasts ℓ̂_{t+k} = ℓ_{t+k} + noise
/// for k = 1..W (gaussian: σ·N(0,1) drawn per (t, k); bias: +μ), solves the
/// (W+1)-round dispatch problem from its own previous output and emits the
/// first action as x̃_t. Noise comes from mt19937_64 seeded by `seed`.
PredictionSeq<std::size_t> mpc_predictor(const NetLoadTrace& trace, const Params& params, std::size_t W,
                                         const Perturbation& perturbation, std::uint64_t seed);

/// One CSV row. Columns are fixed (see kCsvHeader).
struct SweepRow {
  std::uint64_t seed = 0;
  std::size_t T = 0;
  double delta = 0.0;
  double sigma = 0.0;
  double mu = 0.0;
  double cost_blind = 0.0;
  double cost_ftp = 0.0;
  double cost_greedy = 0.0;
  double cost_aos = 0.0;
  double cost_opt = 0.0;
  double eta = 0.0;
  double alpha_emp = 0.0;
  double bound_consistency = 0.0;  ///< (1+2δ)(1+2η)
  double bound_robustness = 0.0;   ///< robustness CR bound at α′ (∞ when unavailable)
  /// Coefficient on greedy cost in the exact per-row robustness check
  /// (∞ when unavailable); not a CSV column.
  double robustness_multiplier = 0.0;
  double alpha_admissible = 0.0;  ///< α′ used for the robustness bound; not a CSV column
  std::string error;              ///< non-empty when the episode failed; not a CSV column
};

inline constexpr const char* kCsvHeader =
    "seed,T,delta,sigma,mu,cost_blind,cost_ftp,cost_greedy,cost_aos,cost_opt,eta,alpha_emp,"
    "bound_consistency,bound_robustness";

struct SweepConfig {
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::size_t T = 96;
  std::size_t window = 10;
  std::vector<double> deltas{0.01, 0.1};
  std::vector<Perturbation> perturbations{{PerturbMode::gaussian, 0.0}};
  Params params;
  NetLoadModel model;
  /// Worker threads over (seed, perturbation) cells; 0 means one.
  unsigned jobs = 1;
};

/// Rows ordered by seed, then perturbation, then δ, independent of `jobs`.
/// A failing episode yields rows with NaN costs and the message in `error`.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

/// CSV with kCsvHeader and every value printed with %.12g.
void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// Exact per-row checks: AOS ≤ (1+2δ)·FtP, FtP ≤ blind, FtP ≤ (1+2η)·OPT and
/// AOS ≤ multiplier·greedy, each with tolerance 1e−9. Returns the names of
/// the failed checks (empty when all hold).
std::vector<std::string> row_violations(const SweepRow& row);

}  // namespace soco::microgrid
