#include <doctest.h>

#include <cmath>

#include "soco/adversarial.hpp"
#include "soco/aobd.hpp"
#include "soco/aos.hpp"
#include "soco/offline.hpp"
#include "soco/selftest.hpp"

using namespace soco;

TEST_CASE("FtP never costs more than following the advice blindly") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const RandomFinite rf = random_finite(derive_seed(21, s));
    const double ftp = run_ftp(rf.instance, rf.predictions).total;
    const double blind = run_blind(rf.instance, rf.predictions).total;
    CHECK(leq_tol(ftp, blind));
  }
}

TEST_CASE("FtP with exact advice matches the optimum") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const RandomFinite rf = random_finite(derive_seed(22, s));
    const auto opt = opt_dp_finite(rf.instance);
    const double ftp = run_ftp(rf.instance, opt.decisions).total;
    CHECK(leq_tol(ftp, opt.total));
  }
}

TEST_CASE("FtP on the line: exact candidate search") {
  const RealLine L;
  // |x − 3| + |x − 0| + |x − 6| is minimized at the median 3
  CHECK(L.ftp_argmin(LineCost(PiecewiseLinear::abs(1.0, 3.0)), 0.0, 6.0) == 3.0);
  // quadratic: ½(x−4)² + |x| + |x| has its stationary point at x = 2
  CHECK(L.ftp_argmin(LineCost(Quadratic{1.0, 4.0}), 0.0, 0.0) == doctest::Approx(2.0));
}

TEST_CASE("AOS rejects non-positive delta") {
  const DiscreteSpace s = DiscreteSpace::on_line({0, 1});
  CHECK_THROWS_AS(AosPolicy<DiscreteSpace>(s, 0.0), ParameterError);
  CHECK_THROWS_AS(AosPolicy<DiscreteSpace>(s, -1.0), ParameterError);
  CHECK_THROWS_AS(AosPolicy<DiscreteSpace>(s, NAN), ParameterError);
}

TEST_CASE("AOS follows exact advice for as long as it is cheap") {
  // the advice stream is the optimum, so the advice test never fails
  const RandomFinite rf = random_finite(derive_seed(23, 3));
  const auto opt = opt_dp_finite(rf.instance);
  const auto res = run_aos(rf.instance, opt.decisions, 1.0);
  for (const auto& r : res.log.rounds) {
    if (r.stage == 1 && r.switch_round == 0) CHECK(r.mode == AosMode::follow_adv);
  }
  CHECK(leq_tol(res.trajectory.total, 3.0 * opt.total));
}

TEST_CASE("AOS switch round on the lower-bound instance matches a replay of the advice test") {
  for (double delta : {0.5, 1.0}) {
    const LowerBoundInstance lb = gen_lower_bound_instance(0.25, delta);
    const auto& inst = lb.instance;
    const auto res = run_aos(inst, lb.predictions, delta);

    // independent replay of the advice test on the FtP and minimizer streams
    const auto p = run_ftp(inst, lb.predictions).decisions;
    const auto& d = inst.space();
    std::size_t expected = 0;
    double adv_sum = 0.0;
    std::size_t p_prev = inst.x0(), v_prev = inst.x0();
    for (std::size_t t = 1; t <= inst.horizon() && expected == 0; ++t) {
      const std::size_t pt = p[t - 1], vt = inst.cost(t).minimizer();
      const double adv = inst.cost(t)(pt) + d.distance(pt, p_prev);
      const double rob = inst.cost(t)(vt) + d.distance(vt, v_prev);
      const double lhs = adv_sum + rob + d.distance(p_prev, v_prev) + d.distance(vt, pt);
      adv_sum += adv;
      if (!(lhs >= (1.0 + delta) * adv_sum)) expected = t;
      p_prev = pt;
      v_prev = vt;
    }
    if (expected == 0) {
      CHECK(res.log.switch_rounds.empty());
    } else {
      REQUIRE_FALSE(res.log.switch_rounds.empty());
      CHECK(res.log.switch_rounds.front() == expected);
      CHECK(res.log.rounds[expected - 1].test == AosRound::Test::forced_rob);
      CHECK(res.trajectory.decisions[expected - 1] == lb.minimizer_index);
    }
  }
}

TEST_CASE("AOS per-stage inequality holds on random instances") {
  double worst = kInfinity;
  for (std::uint64_t s = 0; s < 300; ++s) {
    const RandomFinite rf = random_finite(derive_seed(24, s));
    for (double delta : {0.1, 0.5, 1.0, 2.0}) {
      const auto res = run_aos(rf.instance, rf.predictions, delta);
      const double ftp = run_ftp(rf.instance, rf.predictions).total;
      CHECK(leq_tol(res.trajectory.total, (1.0 + 2.0 * delta) * ftp));
      const double slack = aos_stage_slack(rf.instance.space(), res.log, delta);
      if (std::isfinite(slack)) worst = std::fmin(worst, slack);
    }
  }
  CHECK(worst >= -1e-9);
}

TEST_CASE("AOS log is internally consistent") {
  const RandomFinite rf = random_finite(derive_seed(25, 7));
  const auto res = run_aos(rf.instance, rf.predictions, 0.3);
  const auto& log = res.log;
  REQUIRE(log.rounds.size() == rf.instance.horizon());
  CHECK(log.x.size() == rf.instance.horizon() + 1);
  CHECK(log.stage_starts.front() == 1u);
  double sum = 0.0;
  for (const auto& r : log.rounds) {
    sum += r.alg;
    CHECK(log.x[r.t] == (r.mode == AosMode::follow_adv ? log.p[r.t] : log.v[r.t]));
  }
  CHECK(sum == doctest::Approx(res.trajectory.total));
}

TEST_CASE("AOBD parameters from delta sit on the guarantee boundary") {
  for (double delta : {0.1, 0.5, 1.0, 2.0}) {
    const AobdParams p = AobdParams::from_delta(delta);
    CHECK(p.beta_hi == doctest::Approx(1.0 / delta));
    CHECK(p.beta_lo == doctest::Approx(delta / (2.0 + delta)));
    CHECK(p.in_guarantee_regime());
  }
  CHECK_FALSE(AobdParams{0.1, 0.1}.in_guarantee_regime());
  CHECK_THROWS_AS(AobdParams::from_delta(0.0), ParameterError);
  CHECK_THROWS_AS(AobdPolicy(AobdParams{0.0, 1.0}), ParameterError);
  CHECK_THROWS_AS(AobdPolicy(AobdParams{2.0, 1.0}), ParameterError);
  CHECK(AobdPolicy(AobdParams{0.1, 0.1}).warnings().size() == 1u);
}

TEST_CASE("aobd_lambda solves |x(λ) − from| = β f(x(λ))") {
  const LineCost f(PiecewiseLinear::abs(1.0, 1.0));
  // λ = β(1 − λ) has root β/(1+β)
  for (double beta : {0.25, 1.0, 3.0}) {
    CHECK(aobd_lambda(f, 0.0, 1.0, beta, true) == doctest::Approx(beta / (1.0 + beta)).epsilon(1e-9));
    CHECK(aobd_lambda(f, 0.0, 1.0, beta, false) == doctest::Approx(beta / (1.0 + beta)).epsilon(1e-9));
  }
  // the minimizer is reachable in one step when β·f never falls below the distance
  const LineCost g(PiecewiseLinear({0.0, 1.0}, {5.0, 4.0}, -1.0, 10.0));
  CHECK(aobd_lambda(g, 0.0, 1.0, 1.0, true) == 1.0);
}

TEST_CASE("AOBD rejects non-convex costs") {
  const Instance<RealLine> inst(RealLine{}, 0.0,
                                {LineCost(PiecewiseLinear({0.0, 1.0, 2.0}, {0.0, 1.0, 0.5}, -1.0, 1.0))});
  CHECK_THROWS_AS(run_aobd(inst, {0.0}, AobdParams::from_delta(0.5)), ModelViolation);
}

TEST_CASE("AOBD guarantee against the grid optimum") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const RandomConvexLine rl = random_convex_line(derive_seed(26, s));
    const auto grid = opt_dp_grid(rl.instance, default_grid(rl.instance, 1.0 / 256.0));
    for (double delta : {0.25, 1.0}) {
      const double alg = run_aobd(rl.instance, rl.predictions, AobdParams::from_delta(delta)).total;
      const double bound = (1.0 + 3.0 / delta + 2.0 / (delta * delta)) *
                           (grid.trajectory.total + grid.error_bound);
      CHECK(leq_tol(alg, bound));
    }
  }
}

TEST_CASE("measured ratios: 0/0 is 1 and x/0 is infinite") {
  CHECK(measured_ratio(0.0, 0.0) == 1.0);
  CHECK(is_infinite(measured_ratio(1.0, 0.0)));
  CHECK(measured_ratio(3.0, 2.0) == 1.5);
}

TEST_CASE("policies are reusable after reset") {
  const RandomFinite rf = random_finite(derive_seed(27, 1));
  AosPolicy<DiscreteSpace> aos(rf.instance.space(), 0.5);
  const auto a = run_policy(aos, rf.instance, rf.predictions);
  const auto b = run_policy(aos, rf.instance, rf.predictions);
  CHECK(a.decisions == b.decisions);
  CHECK(a.total == b.total);
}
