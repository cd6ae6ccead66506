#include <doctest.h>

#include <cmath>

#include "soco/adversarial.hpp"
#include "soco/aobd.hpp"
#include "soco/aos.hpp"
#include "soco/bounds.hpp"
#include "soco/offline.hpp"

using namespace soco;

TEST_CASE("lower-bound instance: advice costs L(t), minimizers cost 1") {
  for (auto [delta, t] : {std::pair{0.5, 4}, std::pair{1.0, 4}, std::pair{0.25, 6}}) {
    const double alpha = 2.0 / (t * delta * (1.0 + delta) + 1.0 - delta * delta);
    const LowerBoundInstance lb = gen_lower_bound_instance(alpha, delta);
    CAPTURE(delta);
    CHECK(lb.t == t);
    CHECK_FALSE(lb.alpha_adjusted);
    CHECK(lb.instance.horizon() == static_cast<std::size_t>(t));
    CHECK(lb.coordinates[lb.minimizer_index] == -1.0);
    CHECK(opt_dp_finite(lb.instance).total == doctest::Approx(1.0));

    BlindPolicy<DiscreteSpace> blind;
    const GameTranscript b = play_lower_bound_instance(lb, blind);
    CHECK(b.cr >= 0.999 * lb.lp_value);
    GreedyPolicy<DiscreteSpace> greedy;
    CHECK(play_lower_bound_instance(lb, greedy).cr == doctest::Approx(1.0));
  }
}

TEST_CASE("lower-bound instance rounds the horizon and adjusts alpha") {
  const LowerBoundInstance lb = gen_lower_bound_instance(0.5, 0.5);
  CHECK(lb.alpha_adjusted);
  CHECK(lb.t == 4);
  CHECK(lb.alpha == doctest::Approx(8.0 / 15.0));
  CHECK(lb.lp_value == doctest::Approx(10.765139893345026).epsilon(1e-9));
  CHECK_THROWS_AS(gen_lower_bound_instance(1e-4, 1e-3), ParameterError);
}

TEST_CASE("lower-bound instance from the closed-form increments") {
  const LowerBoundInstance lb = gen_lower_bound_instance(0.25, 1.0, DeltaSource::closed_form);
  REQUIRE(lb.Delta.size() == 4u);
  CHECK(lb.Delta[0] == doctest::Approx(1.0));
  CHECK(lb.advice_points[1] == doctest::Approx(1.0 + 8.0 / 9.0));
}

TEST_CASE("lower-bound transcript replays to the reported costs") {
  const LowerBoundInstance lb = gen_lower_bound_instance(0.5, 0.5);
  AosPolicy<DiscreteSpace> aos(lb.instance.space(), 0.5);
  const GameTranscript tr = play_lower_bound_instance(lb, aos);
  CHECK(tr.game == "lower-bound");
  CHECK(tr.algorithm == "aos");
  REQUIRE(tr.rounds.size() == lb.instance.horizon());
  double cost = 0.0, prev = 0.0;
  for (std::size_t t = 1; t <= tr.rounds.size(); ++t) {
    const double x = tr.rounds[t - 1].decision.at(0);
    cost += lb.alpha * std::fabs(x + 1.0) + std::fabs(x - prev);
    CHECK(tr.rounds[t - 1].branch == (x == -1.0 ? 1 : 2));
    prev = x;
  }
  CHECK(tr.alg_cost == doctest::Approx(cost).epsilon(1e-12));
  CHECK(tr.baseline_cost == doctest::Approx(1.0));
  CHECK(tr.cr < lb.lp_value);  // AOS leaves the advice before it runs up L(t)
}

TEST_CASE("memoryless case bounds at alpha = 0.01") {
  const MemorylessCaseBounds b = memoryless_case_bounds(0.01);
  CHECK(b.far == doctest::Approx(7.106848601022211).epsilon(1e-12));
  CHECK(b.near == doctest::Approx(3.7956115986621017).epsilon(1e-12));
  CHECK(b.leading == doctest::Approx(3.5355339059327378).epsilon(1e-12));
  CHECK_THROWS_AS(memoryless_case_bounds(0.25), ParameterError);
}

TEST_CASE("memoryless case-2 ratio") {
  const double q = std::sqrt(1.0 - 0.02);
  // s = 0: a single round counts
  CHECK(memoryless_case2_ratio(0.01, q, 5) == doctest::Approx(0.9999019559296843).epsilon(1e-12));
  // s = 1: the geometric sum is T
  CHECK(memoryless_case2_ratio(0.01, q - 1.0, 1000) == doctest::Approx(7.2377656634090775).epsilon(1e-12));
}

TEST_CASE("memoryless game: blind stays in case 1, greedy in case 2") {
  BlindPolicy<Plane> blind;
  const MemorylessGame b = play_memoryless_game(blind, 0.01, 50);
  CHECK(b.cases.size() == 50u);
  for (int c : b.cases) CHECK(c == 1);
  CHECK(b.transcript.cr > memoryless_lower_bound(0.01).value);

  GreedyPolicy<Plane> greedy;
  const MemorylessGame g = play_memoryless_game(greedy, 0.01, 20);
  for (int c : g.cases) CHECK(c == 2);
  CHECK(g.transcript.cr > memoryless_lower_bound(0.01).value);
  CHECK_THROWS_AS(play_memoryless_game(greedy, 0.3, 5), ParameterError);
}

TEST_CASE("memoryless transcript replays on the generated instance") {
  FtpPolicy<Plane> ftp(Plane{});
  const MemorylessGame g = play_memoryless_game(ftp, 0.01, 30);
  const auto replay = evaluate(g.instance, g.alg.decisions);
  CHECK(replay.total == doctest::Approx(g.transcript.alg_cost).epsilon(1e-9));
  CHECK(g.transcript.baseline_cost == doctest::Approx(std::min(g.follow_advice_cost, g.follow_minimizers_cost)));
  CHECK(evaluate(g.instance, g.predictions).total == doctest::Approx(g.follow_advice_cost).epsilon(1e-9));
}

TEST_CASE("one-dimensional game") {
  for (double delta : {0.1, 0.25, 0.4}) {
    CAPTURE(delta);
    BlindPolicy<RealLine> blind;
    const OneDimGame b = play_one_dim_game(blind, delta);
    CHECK(b.branch == 1);
    CHECK(b.alg_cost[0] == doctest::Approx(2.0));
    CHECK(b.cr[0] == doctest::Approx(1.0 / delta).epsilon(1e-6));
    CHECK(b.opt_grid[0] == doctest::Approx(2.0 * delta).epsilon(1e-6));
    CHECK(b.opt_grid[1] == doctest::Approx(1.0).epsilon(1e-6));

    // balanced descent stops at λ̄ = 2/3 in round 1 and pays 1/3 in round 2
    AobdPolicy aobd(AobdParams::from_delta(delta));
    const OneDimGame a = play_one_dim_game(aobd, delta);
    CHECK(a.x1 == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(a.alg_cost[1] == doctest::Approx(1.0 + 2.0 * delta / 3.0).epsilon(1e-9));
    CHECK(a.consistent_on_branch2);
  }
  BlindPolicy<RealLine> blind;
  CHECK_THROWS_AS(play_one_dim_game(blind, 0.5), ParameterError);
}

TEST_CASE("bregman target optimum satisfies its optimality conditions") {
  const double alpha = 1.0, beta = 2.0, delta = 1.0;
  const std::size_t T = 30;
  const auto x = bregman_target_optimum(alpha, beta, delta, T);
  REQUIRE(x.size() == T);
  auto at = [&](std::size_t t) { return t == 0 ? 0.0 : x[t - 1]; };
  for (std::size_t t = 1; t < T; ++t) {
    CHECK(alpha * at(t) + (at(t) - at(t - 1)) - (at(t + 1) - at(t)) == doctest::Approx(0.0).epsilon(1e-12));
  }
  CHECK(beta * (at(T) - delta) + (at(T) - at(T - 1)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("bregman game") {
  FtpPolicy<RealLine> ftp(RealLine{});
  const BregmanGame g = play_bregman_game(ftp, 1.0, 1.0, 1.0, 50);
  CHECK(g.asymptotic_opt == doctest::Approx((-1.0 + std::sqrt(5.0)) / 4.0));
  CHECK(g.final_round_floor == doctest::Approx(0.25));
  CHECK(g.opt <= g.opt_grid + 1e-12);
  CHECK(g.opt_grid - g.opt <= g.grid_error);
  CHECK(evaluate(g.instance, g.alg.decisions).total == doctest::Approx(g.transcript.alg_cost));

  BlindPolicy<RealLine> blind;
  const BregmanGame b = play_bregman_game(blind, 1.0, 1.0, 1.0, 50);
  CHECK(b.branch == 1);
  CHECK(b.opt == 0.0);
  CHECK(is_infinite(b.cr));
  CHECK_THROWS_AS(play_bregman_game(blind, 1.0, 1.0, 1.0, 5), ParameterError);
}
