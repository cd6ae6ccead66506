#include <doctest.h>

#include <random>

#include "soco/microgrid.hpp"
#include "soco/offline.hpp"
#include "soco/selftest.hpp"

using namespace soco;

namespace {

Instance<DiscreteSpace> line_instance(std::vector<double> coords, std::size_t x0, std::vector<std::vector<double>> rows) {
  std::vector<TableCost> costs;
  for (auto& r : rows) costs.emplace_back(std::move(r));
  return Instance<DiscreteSpace>(DiscreteSpace::on_line(std::move(coords)), x0, std::move(costs));
}

}  // namespace

TEST_CASE("metric axioms hold on every shipped space") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const RandomFinite rf = random_finite(derive_seed(99, s));
    const MetricCheck m = check_metric_axioms(rf.instance.space());
    CHECK(m.pass);
  }
  CHECK(check_metric_axioms(DiscreteSpace::binary_cube(6, 8.0)).pass);
  CHECK(check_metric_axioms(DiscreteSpace::binary_cube(6, 8.0)).triples_checked == 64u * 64u * 64u);
}

TEST_CASE("a matrix that breaks the triangle inequality is reported") {
  // d(0,2) = 5 > d(0,1) + d(1,2) = 2
  const DiscreteSpace s = DiscreteSpace::from_matrix(3, {0, 1, 5, 1, 0, 1, 5, 1, 0});
  const MetricCheck m = check_metric_axioms(s);
  CHECK_FALSE(m.pass);
  CHECK(m.worst_violation == doctest::Approx(3.0));
}

TEST_CASE("malformed matrices are rejected at construction") {
  CHECK_THROWS_AS(DiscreteSpace::from_matrix(2, {0, 1, 2, 0}), ParameterError);  // asymmetric
  CHECK_THROWS_AS(DiscreteSpace::from_matrix(2, {1, 1, 1, 0}), ParameterError);  // diagonal
  CHECK_THROWS_AS(DiscreteSpace::from_matrix(2, {0, 0, 0, 0}), ParameterError);  // zero distance
}

TEST_CASE("instance invariants") {
  CHECK_THROWS_AS(Instance<DiscreteSpace>(DiscreteSpace::on_line({0, 1}), 0, {}), ParameterError);
  CHECK_THROWS_AS(Instance<DiscreteSpace>(DiscreteSpace::on_line({0, 1}), 2, {TableCost({0, 0})}), InvalidDecision);
  CHECK_THROWS_AS(Instance<DiscreteSpace>(DiscreteSpace::on_line({0, 1}), 0, {TableCost({0, 0})},
                                          Switching::half_squared),
                  ParameterError);
}

TEST_CASE("evaluate: stationary trajectory with zero costs") {
  const auto inst = line_instance({0, 1, 2}, 1, {{1, 0, 1}, {1, 0, 1}, {1, 0, 1}});
  CHECK(evaluate(inst, {1, 1, 1}).total == 0.0);
}

TEST_CASE("evaluate: a single move of length 3") {
  const auto inst = line_instance({0, 3}, 0, {{1, 0}});
  const auto tr = evaluate(inst, {1});
  CHECK(tr.total == 3.0);
  CHECK(tr.ledger[0].hit == 0.0);
  CHECK(tr.ledger[0].move == 3.0);
}

TEST_CASE("evaluate: total equals an independent re-summation and splits over ranges") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const RandomFinite rf = random_finite(derive_seed(5, s));
    const auto& inst = rf.instance;
    // the optimal plan is finite; random advice may hit a forbidden point
    const auto plan = opt_dp_finite(inst).decisions;
    const auto tr = evaluate(inst, plan);
    double sum = 0.0;
    std::size_t prev = inst.x0();
    for (std::size_t t = 1; t <= inst.horizon(); ++t) {
      const std::size_t x = plan[t - 1];
      sum += inst.cost(t)(x) + inst.space().distance(prev, x);
      prev = x;
    }
    CHECK(tr.total == doctest::Approx(sum).epsilon(1e-12));
    const std::size_t T = inst.horizon();
    for (std::size_t k = 1; k < T; ++k) {
      CHECK(tr.range_total(1, T) == doctest::Approx(tr.range_total(1, k) + tr.range_total(k + 1, T)).epsilon(1e-12));
    }
  }
}

TEST_CASE("evaluate: infinite hitting costs are valid and saturate") {
  const auto inst = line_instance({0, 1}, 0, {{kInfinity, 0}});
  CHECK(is_infinite(evaluate(inst, {0}).total));
  CHECK_THROWS_AS(evaluate(inst, {2}), InvalidDecision);
}

TEST_CASE("ties in argmin oracles go to the first index") {
  CHECK(TableCost({2, 1, 1, 3}).minimizer() == 1u);
  const DiscreteSpace s = DiscreteSpace::on_line({0, 1, 2});
  // f + d(., 0) + d(., 2) is 2 everywhere
  CHECK(s.ftp_argmin(TableCost({0, 0, 0}), 0, 2) == 0u);
}

TEST_CASE("eta: exact predictions give 0") {
  const RandomFinite rf = random_finite(derive_seed(11, 0));
  const auto opt = opt_dp_finite(rf.instance);
  CHECK(eta_accuracy(rf.instance, opt.decisions, opt).eta == 0.0);
}

TEST_CASE("eta is unchanged when every distance is scaled") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const RandomFinite rf = random_finite(derive_seed(12, s));
    const auto& a = rf.instance;
    for (double lambda : {0.5, 2.0, 8.0}) {
      // powers of two scale exactly, so the DP sees the same comparisons
      std::vector<TableCost> costs;
      for (const auto& f : a.costs()) {
        std::vector<double> v(f.values().begin(), f.values().end());
        for (double& x : v) x *= lambda;
        costs.emplace_back(std::move(v));
      }
      const Instance<DiscreteSpace> b(a.space().scaled(lambda), a.x0(), std::move(costs));
      const auto oa = opt_dp_finite(a), ob = opt_dp_finite(b);
      CHECK(ob.decisions == oa.decisions);
      const double ea = eta_accuracy(a, rf.predictions, oa).eta;
      const double eb = eta_accuracy(b, rf.predictions, ob).eta;
      CHECK(eb == doctest::Approx(ea).epsilon(1e-12));
    }
  }
}

TEST_CASE("eta matches a brute-force evaluation over the enumerated optimum") {
  const auto inst = line_instance({0, 1, 3}, 0, {{2, 0, 3}, {4, 3, 0}});
  // sequences (x1, x2): optimum is (1, 2): 0 + 1 + 0 + 2 = 3
  CHECK(brute_force_optimum(inst) == 3.0);
  const auto opt = opt_dp_finite(inst);
  CHECK(opt.decisions == std::vector<std::size_t>{1, 2});
  const EtaAccuracy e = eta_accuracy(inst, {0, 0}, opt);
  CHECK(e.distance_sum == 4.0);  // |0-1| + |0-3|
  CHECK(e.eta == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("eta is infinite and flagged when OPT is 0 but the advice is off") {
  const auto inst = line_instance({0, 1}, 0, {{0, 1}});
  const auto opt = opt_dp_finite(inst);
  const EtaAccuracy e = eta_accuracy(inst, {1}, opt);
  CHECK(e.degenerate);
  CHECK(is_infinite(e.eta));
  CHECK(eta_accuracy(inst, {0}, opt).eta == 0.0);
}

TEST_CASE("check_polyhedral: equality case passes with residual 0") {
  const DiscreteSpace s = DiscreteSpace::on_line({0, 1, 3, 6});
  std::vector<double> v;
  for (std::size_t x = 0; x < 4; ++x) v.push_back(0.5 * s.distance(x, 2));
  const auto c = check_polyhedral(s, TableCost(v), 0.5);
  CHECK(c.pass);
  CHECK(c.worst_residual == 0.0);
  CHECK(c.points_checked == 4u);
}

TEST_CASE("check_polyhedral: half the slope fails away from the minimizer") {
  const DiscreteSpace s = DiscreteSpace::on_line({0, 1, 3, 6});
  std::vector<double> v;
  for (std::size_t x = 0; x < 4; ++x) v.push_back(0.25 * s.distance(x, 2));
  const auto c = check_polyhedral(s, TableCost(v), 0.5);
  CHECK_FALSE(c.pass);
  CHECK(c.worst_point == 0u);  // farthest point, residual −0.75
  CHECK(c.worst_residual == doctest::Approx(-0.75));
}

TEST_CASE("check_polyhedral: sampled on the line and the plane") {
  CHECK(check_polyhedral(RealLine{}, LineCost(PiecewiseLinear::abs(2.0, 1.0)), 2.0).pass);
  CHECK_FALSE(check_polyhedral(RealLine{}, LineCost(PiecewiseLinear::abs(1.0, 1.0)), 2.0).pass);
  const ConeCost cone(0.3, {1, 2}, {0, 1}, 10.0);
  CHECK(check_polyhedral(Plane{}, cone, 0.3).pass);
  CHECK_THROWS_AS(check_polyhedral(Plane{}, cone, 0.0), ParameterError);
}

TEST_CASE("microgrid costs pass the exhaustive 64-point check at the builder's alpha") {
  const auto tr = microgrid::gen_netload(3, 96);
  const auto di = microgrid::build_instance(tr);
  REQUIRE(di.alpha > 0);
  for (std::size_t t = 1; t <= di.instance.horizon(); ++t) {
    const auto c = check_polyhedral(di.instance.space(), di.instance.cost(t), di.alpha);
    CHECK(c.pass);
    CHECK(c.points_checked == 64u);
  }
}

TEST_CASE("cube distances are scaled Hamming distances") {
  const DiscreteSpace c = DiscreteSpace::binary_cube(4, 2.5);
  CHECK(c.size() == 16u);
  CHECK(c.distance(0b0000, 0b1011) == 7.5);
  CHECK(c.scaled(2.0).distance(0b0000, 0b1011) == 15.0);
}
