#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "soco/bounds.hpp"
#include "soco/instance.hpp"

namespace soco {

enum class Algorithm { aos, ftp, aobd, greedy, blind };

/// Parses "aos", "ftp", "aobd", "greedy" or "blind"; ConfigError otherwise.
Algorithm parse_algorithm(const std::string& name);
std::string to_string(Algorithm a);

struct EpisodeConfig {
  Algorithm algorithm = Algorithm::aos;
  double delta = 0.5;
  /// AOBD step bounds; when unset they follow from delta.
  std::optional<double> beta_lo;
  std::optional<double> beta_hi;
  /// Grid spacing for the 1-D offline optimum.
  double grid_h = 1.0 / 256.0;
};

/// One inequality evaluated on an episode: pass iff lhs ≤ rhs within 1e−9
/// (relative to max(1, |rhs|)).
struct Check {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
  std::string note;
};

/// Costs of the algorithm, the offline optimum, FtP (advice stream) and the
/// minimizer follower, with the measured ratio and bound comparisons.
struct EpisodeReport {
  std::string algorithm;
  std::vector<std::pair<std::string, double>> params;
  std::size_t T = 0;
  double alg_cost = 0.0;
  double adv_cost = 0.0;
  double rob_cost = 0.0;
  double blind_cost = 0.0;
  /// Absent on spaces without an offline solver (the plane).
  std::optional<double> opt_cost;
  std::string opt_method;  ///< "exact_dp", "grid_dp" or "none"
  /// Grid error bound when opt_method is "grid_dp".
  std::optional<double> error_bound;
  std::optional<double> eta;
  bool eta_degenerate = false;
  /// alg/opt with 0/0 := 1 and x/0 := ∞.
  std::optional<double> measured_cr;
  /// Declared α, or the empirical one on finite spaces.
  std::optional<double> alpha;
  std::vector<BoundReport> bounds;
  std::vector<std::string> bounds_skipped;
  std::vector<Check> checks;
  std::vector<std::string> warnings;

  bool all_checks_pass() const;
};

Check make_check(std::string id, double lhs, double rhs, std::string note = {});

/// min over rounds and points u ≠ v_t of (f_t(u) − f_t(v_t))/d(u, v_t); 0 when
/// some round has a tied minimizer.
double empirical_alpha(const Instance<DiscreteSpace>& inst);

/// Runs the configured algorithm and every baseline on the instance. AOBD
/// needs a real-line instance with metric switching (ConfigError otherwise).
EpisodeReport run_episode(const Instance<DiscreteSpace>& inst, const PredictionSeq<std::size_t>& preds,
                          const EpisodeConfig& cfg);
EpisodeReport run_episode(const Instance<RealLine>& inst, const PredictionSeq<double>& preds,
                          const EpisodeConfig& cfg);
EpisodeReport run_episode(const Instance<Plane>& inst, const PredictionSeq<Vec2>& preds,
                          const EpisodeConfig& cfg);

}  // namespace soco
