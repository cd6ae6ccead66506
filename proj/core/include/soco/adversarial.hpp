#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "soco/policy.hpp"

namespace soco {

/// One round of an adversary game as seen by the algorithm.
struct GameRound {
  std::size_t t = 0;
  std::string cost;              ///< human-readable description of f_t
  std::vector<double> advice;    ///< x̃_t coordinates
  std::vector<double> decision;  ///< x_t coordinates
  int branch = 0;                ///< game-specific case label, 0 if none
};

/// Record of an adaptive game. `baseline_label` is "opt" when the
/// baseline is an exact or grid optimum and "comparison" when it is the
/// construction's explicit comparison trajectory.
struct GameTranscript {
  std::string game;
  std::string algorithm;
  std::vector<std::pair<std::string, double>> params;
  std::vector<GameRound> rounds;
  double alg_cost = 0.0;
  double baseline_cost = 0.0;
  std::string baseline_label = "opt";
  double cr = 0.0;
  int branch = 0;
  std::vector<std::pair<std::string, double>> extras;
};

/// alg/base with 0/0 := 1 and x/0 := ∞.
double measured_ratio(double alg, double base);

// ---------------------------------------------------------------------------
// Lower-bound instance on a finite subset of ℝ.

enum class DeltaSource { lp, closed_form };

struct LowerBoundInstance {
  Instance<DiscreteSpace> instance;
  PredictionSeq<std::size_t> predictions;
  double alpha = 0.0;  ///< α actually used (adjusted when the horizon was rounded)
  double delta = 0.0;
  int t = 0;
  bool alpha_adjusted = false;
  std::vector<double> Delta;  ///< advice increments Δ_1..Δ_t
  std::vector<double> advice_points;  ///< p_s = Δ_1 + ... + Δ_s
  std::vector<double> coordinates;    ///< coordinate of each space index
  std::size_t minimizer_index = 0;    ///< index of −1
  double lp_value = 0.0;              ///< L(t) at (alpha, delta)
};

/// Instance on which following the advice costs L(t) while following the
/// minimizer costs 1: x₀ = 0, v_s = −1, p_s = Σ_{i≤s} Δ_i,
/// f_s = α|x − v_s| on {v_s, p_s} and ∞ elsewhere, x̃_s = p_s.
/// The horizon is t = (2 − α(1−δ²))/(αδ(1+δ)); when it is not an integer
/// it is rounded and α is replaced by 2/(tδ(1+δ) + 1 − δ²) so that the
/// rounded t is exact. Throws ParameterError if t falls outside 1..64.
LowerBoundInstance gen_lower_bound_instance(double alpha, double delta,
                                            DeltaSource source = DeltaSource::lp);

/// Plays `alg` on the instance with its advice; the baseline is the exact
/// offline optimum. Round branch labels are 1 when x_t is the minimizer
/// −1 and 2 otherwise.
GameTranscript play_lower_bound_instance(const LowerBoundInstance& lb, OnlinePolicy<DiscreteSpace>& alg);

// ---------------------------------------------------------------------------
// Rotating-cone game against memoryless algorithms in ℝ².

struct MemorylessGame {
  GameTranscript transcript;
  Instance<Plane> instance;
  PredictionSeq<Vec2> predictions;
  Trajectory<Vec2> alg;
  double follow_advice_cost = 0.0;
  double follow_minimizers_cost = 0.0;
  std::vector<int> cases;                 ///< 1 or 2 per round
  std::size_t reorthogonalizations = 0;
  double max_off_axis = 0.0;              ///< largest distance of x_t from the cost's axis, in frame units
  double penalty_paid = 0.0;              ///< Σ L·off-axis distance, the slack induced by finite L
};

/// Plays the adaptive construction with r₁ = α, r₂ = √(2α): in canonical
/// coordinates x_{t−1} = (0, r₂), v_t = (−(r₂²−r₁²)/(2r₁), 0),
/// x̃_t = (√(1−r₂²), 0) and f_t = α‖z − v_t‖ + L|z₂|. Each round the
/// algorithm's decision x_t is mapped back to canonical coordinates; if its
/// first coordinate exceeds r₁ (case 1) the next frame is the similarity
/// taking (x_{t−1}, v_t) to (x_t, v_t), otherwise (case 2) the one taking
/// (x_{t−1}, x̃_t) to (x_t, x̃_t). The baseline is the cheaper of following
/// the advice and following the minimizers on the generated instance.
/// Requires 0 < α < 1/4.
MemorylessGame play_memoryless_game(OnlinePolicy<Plane>& alg, double alpha, std::size_t rounds,
                                    double penalty = 1e6);

/// Closed-form ratios from the case-2 analysis. With s = √(1−r₂²) − x₁
/// the per-round scale factor:
///   far  (s ≥ 1): √(2 − 2√(1−2α)) / (α(α/2 + 1 + √(1−2α)))
///   near (s < 1): (√(α²+2α) + α(α + 1 − α/2)) / (1 − √(1−2α) + α + α(α/2 + 1 + √(1−2α)))
/// and the leading term 1/√(8α) both approach.
struct MemorylessCaseBounds {
  double far = 0.0;
  double near = 0.0;
  double leading = 0.0;
};
MemorylessCaseBounds memoryless_case_bounds(double alpha);

/// Exact ratio of the algorithm's and the advice-follower's costs over T
/// rounds of case 2 when the algorithm's canonical first coordinate is x1.
double memoryless_case2_ratio(double alpha, double x1, std::size_t T);

// ---------------------------------------------------------------------------
// Two-round game on ℝ against consistent algorithms.

struct OneDimGame {
  GameTranscript transcript;
  double x1 = 0.0;
  int branch = 0;  ///< 1 if x₁ ≥ 1/2, else 2
  /// Index 0 is branch 1, index 1 is branch 2; both branches are played so
  /// the counterfactual costs are available.
  double alg_cost[2] = {0.0, 0.0};
  double opt_stated[2] = {0.0, 0.0};  ///< 2δ and 1
  double opt_grid[2] = {0.0, 0.0};
  double grid_error[2] = {0.0, 0.0};
  double cr[2] = {0.0, 0.0};
  /// Branch-2 cost ≤ (1+δ)·OPT + grid error.
  bool consistent_on_branch2 = false;
};

/// x₀ = 0, f₁ = 2δ|x − 1|, x̃₁ = 1. If x₁ ≥ 1/2: f₂ = |x|, x̃₂ = 0
/// (OPT = 2δ); otherwise f₂ = |x − 1|, x̃₂ = 1 (OPT = 1). Requires
/// 0 < δ < 1/2.
OneDimGame play_one_dim_game(OnlinePolicy<RealLine>& alg, double delta, double grid_h = 1.0 / 1024.0);

// ---------------------------------------------------------------------------
// Strongly convex game with half-squared switching.

struct BregmanGame {
  GameTranscript transcript;
  Instance<RealLine> instance;
  PredictionSeq<double> predictions;
  Trajectory<double> alg;
  int branch = 0;  ///< 1: punisher played (some x_t > 0 before T), 2: target played
  double opt = 0.0;            ///< exact optimum of the played instance
  double opt_grid = 0.0;       ///< grid DP optimum
  double grid_error = 0.0;
  double asymptotic_opt = 0.0; ///< δ²(−α + √(α²+4α))/4
  double final_round_floor = 0.0;  ///< δ²/(2(1+β⁻¹))
  double cr = 0.0;
};

/// Hindsight optimum of Σ_{t<T} αx_t²/2 + β(x_T − δ)²/2 + Σ_t ½(x_t − x_{t−1})²
/// with x₀ = 0, solved exactly from its tridiagonal optimality system.
std::vector<double> bregman_target_optimum(double alpha, double beta, double delta, std::size_t T);

/// f_t = αx²/2 for t < T, predictions equal to bregman_target_optimum.
/// If the algorithm leaves 0 before T the last cost is βx²/2 (OPT = 0),
/// otherwise β(x − δ)²/2. Requires α, β, δ > 0 and T ≥ 10.
BregmanGame play_bregman_game(OnlinePolicy<RealLine>& alg, double alpha, double beta, double delta,
                              std::size_t T, double grid_h = 1.0 / 128.0);

}  // namespace soco
