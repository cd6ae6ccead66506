#include "soco/offline.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace soco {

namespace {

struct Cell {
  double value = kInfinity;
  std::size_t from = 0;
};

// Keep the candidate with the smaller value, then the smaller source index.
inline void relax(Cell& c, double value, std::size_t from) {
  if (value < c.value || (value == c.value && from < c.from)) c = {value, from};
}

template <class P>
std::vector<P> backtrack(const std::vector<std::vector<std::size_t>>& parent, std::size_t last,
                         auto&& to_point) {
  std::vector<P> xs(parent.size());
  std::size_t k = last;
  for (std::size_t t = parent.size(); t-- > 0;) {
    xs[t] = to_point(k);
    k = parent[t][k];
  }
  return xs;
}

std::size_t best_final(const std::vector<double>& value) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < value.size(); ++k)
    if (value[k] < value[best]) best = k;
  return best;
}

void require_finite(const std::vector<double>& value, std::size_t t) {
  if (std::none_of(value.begin(), value.end(), [](double v) { return std::isfinite(v); })) {
    throw InfeasibleRound("no finite-cost trajectory reaches round " + std::to_string(t));
  }
}

}  // namespace

namespace {

void check_finite_size(const DiscreteSpace& sp) {
  if (sp.form() == DiscreteSpace::Form::cube) {
    if (sp.bits() > kMaxCubeBits) {
      throw SizeError("cube dimension " + std::to_string(sp.bits()) + " exceeds the DP limit of " +
                      std::to_string(kMaxCubeBits));
    }
  } else if (sp.size() > kMaxFinitePoints) {
    throw SizeError("space of " + std::to_string(sp.size()) + " points exceeds the DP limit of " +
                    std::to_string(kMaxFinitePoints));
  }
}

// out[x] = min_y d(x, y) + g[y].
void distance_transform(const DiscreteSpace& sp, const std::vector<double>& g, std::vector<double>& out) {
  const std::size_t n = sp.size();
  if (sp.form() == DiscreteSpace::Form::cube) {
    out = g;
    std::vector<double> next(n);
    for (int b = 0; b < sp.bits(); ++b) {
      const std::size_t bit = std::size_t{1} << b;
      for (std::size_t x = 0; x < n; ++x) next[x] = std::min(out[x], out[x ^ bit] + sp.scale());
      out.swap(next);
    }
  } else {
    out.assign(n, kInfinity);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) out[x] = std::min(out[x], sp.distance(x, y) + g[y]);
  }
}

}  // namespace

std::vector<std::size_t> optimal_plan(const DiscreteSpace& sp, std::size_t start,
                                      std::span<const TableCost> costs) {
  check_finite_size(sp);
  const std::size_t n = sp.size();
  const std::size_t T = costs.size();
  if (!sp.contains(start)) throw InvalidDecision("start point is outside the decision space");
  // g[t][y] = f_{t+1}(y) + V_{t+2}(y), 0-based over rounds.
  std::vector<std::vector<double>> g(T, std::vector<double>(n));
  std::vector<double> togo(n, 0.0);
  for (std::size_t t = T; t-- > 0;) {
    if (costs[t].size() != n) throw ParameterError("cost table does not match the space size");
    for (std::size_t y = 0; y < n; ++y) g[t][y] = costs[t](y) + togo[y];
    distance_transform(sp, g[t], togo);
  }
  std::vector<std::size_t> plan(T);
  std::size_t prev = start;
  for (std::size_t t = 0; t < T; ++t) {
    std::size_t best = n;
    double best_val = kInfinity;
    for (std::size_t y = 0; y < n; ++y) {
      double v = sp.distance(prev, y) + g[t][y];
      if (v < best_val) {
        best_val = v;
        best = y;
      }
    }
    if (best == n) throw InfeasibleRound("no finite-cost trajectory reaches round " + std::to_string(t + 1));
    plan[t] = prev = best;
  }
  return plan;
}

Trajectory<std::size_t> opt_dp_finite(const Instance<DiscreteSpace>& inst) {
  return evaluate(inst, optimal_plan(inst.space(), inst.x0(), inst.costs()));
}

std::size_t GridSpec::nodes() const {
  if (!(h > 0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw ConfigError("grid needs lo <= hi and h > 0");
  }
  double steps = (hi - lo) / h;
  double rounded = std::round(steps);
  if (std::fabs(steps - rounded) > 1e-9 * std::fmax(1.0, steps)) {
    throw ConfigError("grid spacing does not divide the interval");
  }
  return static_cast<std::size_t>(rounded) + 1;
}

GridSpec default_grid(const Instance<RealLine>& inst, double h, double margin) {
  if (!(h > 0)) throw ConfigError("grid spacing must be positive");
  const double x0 = inst.x0();
  double lo = x0, hi = x0;
  for (std::size_t t = 1; t <= inst.horizon(); ++t) {
    lo = std::min(lo, inst.minimizer(t));
    hi = std::max(hi, inst.minimizer(t));
  }
  lo -= margin;
  hi += margin;
  const double below = std::ceil((x0 - lo) / h - 1e-9);
  const double above = std::ceil((hi - x0) / h - 1e-9);
  return {x0 - below * h, x0 + above * h, h};
}

GridOptimum opt_dp_grid(const Instance<RealLine>& inst, const GridSpec& grid) {
  const std::size_t G = grid.nodes();
  const bool quad = inst.switching() == Switching::half_squared;
  if (G > (quad ? 20000u : 50000000u)) throw SizeError("grid has too many nodes");
  const double k0 = (inst.x0() - grid.lo) / grid.h;
  const double k0r = std::round(k0);
  if (std::fabs(k0 - k0r) > 1e-9 * std::fmax(1.0, k0) || k0r < 0 || k0r >= static_cast<double>(G)) {
    throw ConfigError("start point is not a grid node");
  }
  const std::size_t T = inst.horizon();
  std::vector<double> value(G, kInfinity);
  value[static_cast<std::size_t>(k0r)] = 0.0;
  std::vector<std::vector<std::size_t>> parent(T, std::vector<std::size_t>(G));
  std::vector<Cell> cells(G);
  for (std::size_t t = 1; t <= T; ++t) {
    if (quad) {
      for (std::size_t x = 0; x < G; ++x) {
        Cell c;
        for (std::size_t y = 0; y < G; ++y) {
          if (!std::isfinite(value[y])) continue;
          double d = (grid.node(x) - grid.node(y));
          relax(c, value[y] + 0.5 * d * d, y);
        }
        cells[x] = c;
      }
    } else {
      for (std::size_t x = 0; x < G; ++x) cells[x] = {value[x], x};
      for (std::size_t x = 1; x < G; ++x) relax(cells[x], cells[x - 1].value + grid.h, cells[x - 1].from);
      for (std::size_t x = G - 1; x-- > 0;) relax(cells[x], cells[x + 1].value + grid.h, cells[x + 1].from);
    }
    const LineCost& f = inst.cost(t);
    for (std::size_t x = 0; x < G; ++x) {
      value[x] = cells[x].value + f(grid.node(x));
      parent[t - 1][x] = cells[x].from;
    }
    require_finite(value, t);
  }
  auto xs = backtrack<double>(parent, best_final(value), [&](std::size_t k) { return grid.node(k); });
  GridOptimum out{evaluate(inst, std::move(xs)), grid, 0.0};
  double lip = 0.0;
  for (const LineCost& f : inst.costs()) lip = std::max(lip, f.lipschitz_on(grid.lo, grid.hi));
  const double Th = static_cast<double>(T) * grid.h;
  out.error_bound = quad ? Th * (lip + grid.hi - grid.lo) : Th * (1.0 + lip);
  return out;
}

}  // namespace soco
