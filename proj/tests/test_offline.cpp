#include <doctest.h>

#include <random>

#include "soco/offline.hpp"
#include "soco/selftest.hpp"

using namespace soco;

namespace {

/// n points on a line with random integer costs, some forbidden.
Instance<DiscreteSpace> small_instance(std::mt19937_64& rng, std::size_t n, std::size_t T) {
  std::vector<double> coords(n);
  for (std::size_t i = 0; i < n; ++i) coords[i] = static_cast<double>(i) * 1.5 + (i % 2 ? 0.25 : 0.0);
  std::uniform_int_distribution<int> cost(0, 9);
  std::vector<TableCost> costs;
  for (std::size_t t = 0; t < T; ++t) {
    std::vector<double> v(n);
    for (auto& x : v) x = cost(rng) == 0 ? kInfinity : cost(rng);
    v[rng() % n] = cost(rng);  // at least one finite point per round
    costs.emplace_back(std::move(v));
  }
  return Instance<DiscreteSpace>(DiscreteSpace::on_line(coords), rng() % n, std::move(costs));
}

}  // namespace

TEST_CASE("exact DP equals exhaustive enumeration") {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 2 + rng() % 4, T = 1 + rng() % 5;
    const auto inst = small_instance(rng, n, T);
    const double brute = brute_force_optimum(inst);
    const auto dp = opt_dp_finite(inst);
    CHECK(dp.total == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("DP on the cube form agrees with the same metric as a matrix") {
  std::mt19937_64 rng(7);
  const int bits = 3;
  const DiscreteSpace cube = DiscreteSpace::binary_cube(bits, 2.0);
  std::vector<double> m(64);
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b) m[a * 8 + b] = cube.distance(a, b);
  const DiscreteSpace mat = DiscreteSpace::from_matrix(8, m);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int k = 0; k < 50; ++k) {
    std::vector<TableCost> costs;
    for (int t = 0; t < 12; ++t) {
      std::vector<double> v(8);
      for (auto& x : v) x = u(rng);
      if (k % 3 == 0) v[rng() % 8] = kInfinity;
      costs.emplace_back(std::move(v));
    }
    const Instance<DiscreteSpace> a(cube, 0, costs), b(mat, 0, costs);
    const auto oa = opt_dp_finite(a), ob = opt_dp_finite(b);
    CHECK(oa.total == doctest::Approx(ob.total).epsilon(1e-12));
    CHECK(oa.decisions == ob.decisions);
  }
}

TEST_CASE("re-planning the tail from any point of a plan reproduces the plan") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const RandomFinite rf = random_finite(derive_seed(31, s));
    const auto& inst = rf.instance;
    const auto plan = optimal_plan(inst.space(), inst.x0(), inst.costs());
    for (std::size_t k = 1; k < plan.size(); ++k) {
      std::span<const TableCost> tail(inst.costs().data() + k, inst.costs().size() - k);
      const auto re = optimal_plan(inst.space(), plan[k - 1], tail);
      CHECK(std::equal(re.begin(), re.end(), plan.begin() + static_cast<std::ptrdiff_t>(k)));
    }
  }
}

TEST_CASE("DP ties go to the smallest index") {
  // both points cost the same in total: stay at 0 (cost 1) or move to 1 (cost 1)
  const Instance<DiscreteSpace> inst(DiscreteSpace::on_line({0, 1}), 0, {TableCost({1, 0})});
  CHECK(opt_dp_finite(inst).decisions == std::vector<std::size_t>{0});
}

TEST_CASE("DP guards") {
  const Instance<DiscreteSpace> big(DiscreteSpace::binary_cube(kMaxCubeBits + 1, 1.0), 0,
                                    {TableCost(std::vector<double>(std::size_t{1} << (kMaxCubeBits + 1), 0.0))});
  CHECK_THROWS_AS(opt_dp_finite(big), SizeError);
  const Instance<DiscreteSpace> dead(DiscreteSpace::on_line({0, 1}), 0, {TableCost({kInfinity, kInfinity})});
  CHECK_THROWS_AS(opt_dp_finite(dead), InfeasibleRound);
}

TEST_CASE("grid spec arithmetic") {
  CHECK(GridSpec{0.0, 1.0, 0.25}.nodes() == 5u);
  CHECK(GridSpec{0.0, 1.0, 0.25}.refined().nodes() == 9u);
  CHECK_THROWS_AS(GridSpec({0.0, 1.0, 0.3}).nodes(), ConfigError);
  CHECK_THROWS_AS(GridSpec({1.0, 0.0, 0.5}).nodes(), ConfigError);
  CHECK_THROWS_AS(GridSpec({0.0, 1.0, 0.0}).nodes(), ConfigError);
}

TEST_CASE("default grid covers x0 and every minimizer with x0 on a node") {
  const Instance<RealLine> inst(RealLine{}, 0.1,
                                {LineCost(PiecewiseLinear::abs(1.0, -2.0)), LineCost(PiecewiseLinear::abs(1.0, 3.3))});
  const GridSpec g = default_grid(inst, 0.25);
  CHECK(g.lo <= -2.0);
  CHECK(g.hi >= 3.3);
  const double k = (0.1 - g.lo) / g.h;
  CHECK(k == doctest::Approx(std::round(k)));
  CHECK_THROWS_AS(opt_dp_grid(inst, GridSpec{-2.0, 4.0, 0.25}), ConfigError);
}

TEST_CASE("grid optimum is within its error bound of the exact optimum") {
  // x₀ = 0, f = 3|x − 0.5|: the optimum moves to 0.5 and pays 0.5
  const Instance<RealLine> inst(RealLine{}, 0.0, {LineCost(PiecewiseLinear::abs(3.0, 0.5))});
  const GridOptimum g = opt_dp_grid(inst, default_grid(inst, 0.3));
  CHECK(g.trajectory.total == doctest::Approx(0.9));
  CHECK(g.error_bound == doctest::Approx(1.2));  // T·h·(1 + Lip)
  CHECK(g.trajectory.total - 0.5 <= g.error_bound);
  const GridOptimum fine = opt_dp_grid(inst, default_grid(inst, 0.25));
  CHECK(fine.trajectory.total == doctest::Approx(0.5));
}

TEST_CASE("grid refinement never increases the grid optimum") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const RandomConvexLine rl = random_convex_line(derive_seed(32, s));
    const GridSpec g = default_grid(rl.instance, 1.0 / 16.0);
    const double coarse = opt_dp_grid(rl.instance, g).trajectory.total;
    const double fine = opt_dp_grid(rl.instance, g.refined()).trajectory.total;
    CHECK(leq_tol(fine, coarse));
  }
}

TEST_CASE("grid optimum with half-squared switching") {
  // ½x² + ½(x − 1)²: optimum at x = ½ with value ¼
  const Instance<RealLine> inst(RealLine{}, 0.0, {LineCost(Quadratic{1.0, 1.0})}, Switching::half_squared);
  const GridOptimum g = opt_dp_grid(inst, default_grid(inst, 0.25));
  CHECK(g.trajectory.total == doctest::Approx(0.25));
  CHECK(g.trajectory.decisions.front() == doctest::Approx(0.5));
}

TEST_CASE("brute force enumerates every sequence") {
  // two rounds, three points: optimum (1, 2) costs 3
  std::vector<TableCost> costs{TableCost({2, 0, 3}), TableCost({4, 3, 0})};
  const Instance<DiscreteSpace> inst(DiscreteSpace::on_line({0, 1, 3}), 0, costs);
  CHECK(brute_force_optimum(inst) == 3.0);
}
