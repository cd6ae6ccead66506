#pragma once

#include <string>
#include <utility>
#include <vector>

namespace soco {

/// Largest t accepted by the certificate LPs.
inline constexpr int kMaxCertificateT = 64;
/// Up to this t the LPs are solved in exact rational arithmetic.
inline constexpr int kExactLpMaxT = 16;

/// Solution (or candidate point) of the robustness dual LP
///   min U  s.t. for 1 ≤ s ≤ t:
///     δ Σ_{i=s}^{t} (1+α(i−s+1)) y_i + α Σ_{i=s}^{t−1} y_i − 2 Σ_{i=s+1}^{t} y_i ≥ 1 + α(t−s+1)
///     U ≥ 2 y_s + δ Σ_{i=s}^{t} y_i − 1,   y ≥ 0.
struct DualCertificate {
  int t = 0;
  double alpha = 0.0;
  double delta = 0.0;
  std::vector<double> y;  ///< y_1..y_t
  double U = 0.0;
  std::vector<double> cover_residuals;  ///< lhs − rhs of the first family
  std::vector<double> cap_residuals;    ///< U + 1 − 2y_s − δΣ y_i
  double min_residual = 0.0;            ///< over both families and y ≥ 0
  bool feasible = false;
  bool exact = false;  ///< solved in rational arithmetic
  std::string status;  ///< "optimal", "infeasible", "candidate"
};

/// Lower-bound primal LP
///   max αt + Σ_j Δ_j (1 + α(t−j+1))  s.t. for 1 ≤ s ≤ t:
///     Σ_{j≤s} (δ + δα(s−j+1) + α − 2·[j<s]) Δ_j ≤ 2 − α − δαs,   Δ ≥ 0,
/// the expanded form of 2(1 + Σ_{i<s} Δ_i) ≥ δ Σ_{i≤s}(Δ_i + α(1 + Σ_{j≤i} Δ_j)) + α(1 + Σ_{i≤s} Δ_i).
struct PrimalCertificate {
  int t = 0;
  double alpha = 0.0;
  double delta = 0.0;
  std::vector<double> Delta;  ///< Δ_1..Δ_t
  double objective = 0.0;
  std::vector<double> residuals;  ///< rhs − lhs per s
  double min_residual = 0.0;
  bool feasible = false;
  bool exact = false;
  std::string status;  ///< "optimal", "infeasible", "unbounded", "candidate"
};

/// Residuals are judged relative to the size of the terms they cancel:
/// feasible means residual ≥ −1e−7·max(1, Σ|terms|).
DualCertificate check_dual(int t, double alpha, double delta, std::vector<double> y, double U);
PrimalCertificate check_primal(int t, double alpha, double delta, std::vector<double> Delta);

/// Exact rational simplex for t ≤ 16, double simplex above; the returned
/// residuals are always recomputed from (y, U) in double precision.
/// Throws ParameterError for α, δ ≤ 0 or t outside 1..64.
DualCertificate solve_U(int t, double alpha, double delta);
PrimalCertificate solve_L(int t, double alpha, double delta);

/// r = 2/(α + δ(1+α)).
double growth_ratio(double alpha, double delta);

/// Closed-form upper bound on sup_t U(t):
///   Ũ = α r^{2/(αδ)} + 2/(2−α−δ(1+α))² · (α r^{2/(αδ)} − (2−α)/δ + 1).
/// Throws ParameterError unless 2/(αδ) is a positive integer and
/// 2 − α − δ(1+α) ≠ 0.
double tilde_U(double alpha, double delta);

/// y_{t−s} = r^s · ((2 − (s−1)⁺ αδ)/(2δ))⁺ for s = 0..t−1.
std::vector<double> closed_form_dual_y(int t, double alpha, double delta);

/// Largest α′ ≤ α with 2/(α′δ) a positive integer: α′ = 2/(δ·⌈2/(αδ)⌉).
/// An α-polyhedral instance is also α′-polyhedral, so the robustness
/// guarantee applies at α′.
double admissible_alpha(double alpha, double delta);

/// Coefficient of Σ Rob(i) in the robustness guarantee: (4Ũ+4)/δ + 2Ũ + 5.
double robustness_multiplier(double alpha, double delta);

/// t = (2 − α(1−δ²)) / (αδ(1+δ)), the horizon of the lower-bound construction.
double lower_bound_horizon(double alpha, double delta);

/// Δ_s = ((2 − α(1−δ²) − sαδ(1+δ))/2) · r^s for s = 1..t.
std::vector<double> closed_form_Delta(int t, double alpha, double delta);

/// Objective of the primal LP at closed_form_Delta, summed in closed form
/// through the geometric series Σ s^k r^s (k = 0, 1, 2).
double closed_form_L_objective(int t, double alpha, double delta);

/// Objective of the primal LP at an arbitrary Δ by direct summation.
double primal_objective(double alpha, double delta, const std::vector<double>& Delta);

/// One evaluated competitive-ratio bound.
struct BoundReport {
  std::string id;  ///< e.g. "aos.consistency"
  std::vector<std::pair<std::string, double>> inputs;
  double value = 0.0;
  std::string note;
};

/// AOS: (1+2δ)(1+2η).
BoundReport aos_consistency_bound(double delta, double eta);
/// AOS: ((4Ũ+4)/δ + 2Ũ + 5)·max{1, 2/α}, the robustness multiplier times
/// the competitive ratio of the minimizer follower.
BoundReport aos_robustness_bound(double alpha, double delta);
/// AOS: minimum of the two arms above.
BoundReport aos_bound(double alpha, double delta, double eta);
/// Robustness lower bound for (1+ε)-consistent algorithms, ε < δ:
/// the LP value L(t) at t = lower_bound_horizon(α, δ) (must be integral),
/// with the leading term (αδ/4)·r^t recorded in the note.
BoundReport consistency_robustness_lower_bound(double alpha, double delta);
/// Memoryless algorithms on ℝ²: leading term 1/√(8α) of the consistency
/// lower bound for robust algorithms; α < 1/4.
BoundReport memoryless_lower_bound(double alpha);
/// AOBD: min{(1+(2+β̄⁻¹)β̲)(1+2η), 1+(2+β̲⁻¹)β̄}.
BoundReport aobd_bound(double beta_lo, double beta_hi, double eta);
/// AOBD with β̄ = 1/δ, β̲ = δ/(2+δ), δ ≤ 2: min{(1+δ)(1+2η), 1+3/δ+2/δ²}.
BoundReport aobd_bound_delta(double delta, double eta);
/// One-dimensional convex lower bound: 1/(2δ) for 0 < δ < 1/2.
BoundReport one_dim_lower_bound(double delta);

/// All bounds whose preconditions hold for the given inputs; bounds whose
/// preconditions fail are skipped with the reason in `skipped`.
struct BoundSet {
  std::vector<BoundReport> reports;
  std::vector<std::string> skipped;
};
BoundSet applicable_bounds(double alpha, double delta, double eta, double beta_lo, double beta_hi);

}  // namespace soco
