#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "soco/instance.hpp"

namespace soco {

/// Seed of the i-th instance of a suite or sweep (splitmix64 of the pair).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i);

/// A random finite instance for the inequality suites.
struct RandomFinite {
  Instance<DiscreteSpace> instance;
  PredictionSeq<std::size_t> predictions;
  double alpha = 0.0;  ///< every f_t is α-polyhedral by construction
  int prediction_mode = 0;  ///< 0 uniform, 1 noisy optimum, 2 exact optimum
};

/// Spaces of 4..64 points (Euclidean point clouds, points on a line or
/// binary cubes), T in 1..50 and costs f_t(x) = b_t + α·d(x, v_t) + e_t(x)
/// with e_t ≥ 0, occasionally +∞ away from v_t. Deterministic in `seed`.
RandomFinite random_finite(std::uint64_t seed);

/// Random convex piecewise-linear instance on ℝ with metric switching,
/// T in 1..30, and random advice.
struct RandomConvexLine {
  Instance<RealLine> instance;
  PredictionSeq<double> predictions;
};
RandomConvexLine random_convex_line(std::uint64_t seed);

/// Minimum over all n^T decision sequences by exhaustive enumeration.
double brute_force_optimum(const Instance<DiscreteSpace>& inst);

struct SuiteResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

struct SelftestOptions {
  std::uint64_t seed = 1;
  /// Worker threads for the microgrid sweep.
  unsigned jobs = 1;
};

/// Suites 1..10: consistency, robustness, FtP, certificates, lower bound,
/// one-dimensional game, memoryless game, AOBD, microgrid trends and
/// DP-versus-enumeration. A suite passes only if every check holds and it
/// finishes within its time budget.
SuiteResult consistency_suite(const SelftestOptions& opt);
SuiteResult robustness_suite(const SelftestOptions& opt);
SuiteResult ftp_suite(const SelftestOptions& opt);
SuiteResult certificate_suite(const SelftestOptions& opt);
SuiteResult lower_bound_suite(const SelftestOptions& opt);
SuiteResult one_dim_game_suite(const SelftestOptions& opt);
SuiteResult memoryless_game_suite(const SelftestOptions& opt);
SuiteResult aobd_suite(const SelftestOptions& opt);
SuiteResult microgrid_suite(const SelftestOptions& opt);
SuiteResult oracle_suite(const SelftestOptions& opt);

std::vector<SuiteResult> run_selftest(const SelftestOptions& opt);

/// "PASS [k] name (x.xx s): detail" or the FAIL equivalent.
std::string format_result(const SuiteResult& r);

}  // namespace soco
