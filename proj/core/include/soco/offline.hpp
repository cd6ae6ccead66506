#pragma once

#include <cstddef>
#include <span>

#include "soco/instance.hpp"

namespace soco {

/// Largest matrix space and cube dimension accepted by the exact DP.
inline constexpr std::size_t kMaxFinitePoints = 10000;
inline constexpr int kMaxCubeBits = 12;

/// Optimal decisions for the given costs starting from `start`: a backward
/// pass computes the cost-to-go V_t(x) = min_y d(x, y) + f_t(y) + V_{t+1}(y),
/// then a forward pass picks x_t = argmin_y d(x_{t−1}, y) + f_t(y) + V_{t+1}(y)
/// with ties broken towards the smallest index. The forward rule depends on
/// the past only through x_{t−1}, so re-planning the tail from any x_t of
/// the plan reproduces the rest of the plan. O(T·n²) for matrix spaces and
/// O(T·n·log n) for the binary cube (per-coordinate distance transform).
/// Throws SizeError above the size guards and InfeasibleRound when no
/// finite-cost trajectory exists.
std::vector<std::size_t> optimal_plan(const DiscreteSpace& space, std::size_t start,
                                      std::span<const TableCost> costs);

/// Offline optimum of a finite instance (optimal_plan from x₀, evaluated).
Trajectory<std::size_t> opt_dp_finite(const Instance<DiscreteSpace>& inst);

/// Uniform grid lo, lo+h, ..., hi on ℝ.
struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  double h = 1.0;

  std::size_t nodes() const;
  double node(std::size_t k) const { return lo + static_cast<double>(k) * h; }
  /// Same interval, half the spacing: every node stays a node.
  GridSpec refined() const { return {lo, hi, h / 2.0}; }
};

/// Grid covering x₀ and every minimizer v_t (widened by `margin`), with
/// x₀ on a node. For convex costs the optimum stays inside the hull of
/// x₀ and the minimizers, since clamping a trajectory to that interval
/// lowers every hitting cost and shortens every move, so margin 0 loses
/// nothing.
GridSpec default_grid(const Instance<RealLine>& inst, double h, double margin = 0.0);

struct GridOptimum {
  Trajectory<double> trajectory;
  GridSpec grid;
  /// |grid optimum − true optimum| ≤ error_bound for convex costs:
  /// T·h·(1 + Lip) with metric switching, T·h·(Lip + hi − lo) with
  /// half-squared switching, Lip the largest Lipschitz constant on [lo, hi].
  double error_bound = 0.0;
};

/// Optimum restricted to the grid. Metric switching uses forward and
/// backward L1 sweeps (O(T·G)); half-squared switching compares all node
/// pairs (O(T·G²)). x₀ must be a grid node (ConfigError otherwise).
GridOptimum opt_dp_grid(const Instance<RealLine>& inst, const GridSpec& grid);

}  // namespace soco
