#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace soco {

/// One (instance, δ) cell of a random finite-instance sweep.
struct FiniteSweepRow {
  std::size_t instance = 0;
  std::uint64_t seed = 0;  ///< seed passed to random_finite
  std::size_t n = 0;
  std::size_t T = 0;
  double alpha = 0.0;
  double delta = 0.0;
  int prediction_mode = 0;
  double cost_aos = 0.0;
  double cost_ftp = 0.0;
  double cost_blind = 0.0;
  double cost_greedy = 0.0;
  double cost_opt = 0.0;
  double eta = 0.0;
  bool consistency_ok = false;  ///< AOS ≤ (1+2δ)·FtP
  /// AOS ≤ multiplier(α′, δ)·greedy; true when (α′, δ) is outside the regime.
  bool robustness_ok = false;
  bool robustness_checked = false;
  bool ftp_ok = false;  ///< FtP ≤ blind and FtP ≤ (1+2η)·OPT
  std::string error;
};

inline constexpr const char* kFiniteCsvHeader =
    "instance,seed,n,T,alpha,delta,prediction_mode,cost_aos,cost_ftp,cost_blind,cost_greedy,cost_opt,eta,"
    "consistency_ok,robustness_ok,robustness_checked,ftp_ok";

/// `count` instances from random_finite, seeded from `seed`, crossed with
/// every δ. Rows are ordered by instance then δ regardless of `jobs`.
std::vector<FiniteSweepRow> run_finite_sweep(std::size_t count, std::uint64_t seed,
                                             const std::vector<double>& deltas, unsigned jobs = 1);

void write_csv(std::ostream& os, const std::vector<FiniteSweepRow>& rows);

}  // namespace soco
