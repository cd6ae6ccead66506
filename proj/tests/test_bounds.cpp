#include <doctest.h>

#include <cmath>

#include "soco/bounds.hpp"
#include "soco/cost.hpp"
#include "soco/error.hpp"

using namespace soco;

// Reference values below were computed independently with a floating-point
// LP solver (scipy linprog) from the LP statements in bounds.hpp.

TEST_CASE("U(t) at alpha = delta = 0.5") {
  const double expected[] = {4.0, 8.0, 12.8, 17.92, 22.528, 25.3952, 25.3952, 25.3952, 25.3952, 25.3952};
  for (int t = 1; t <= 10; ++t) {
    const DualCertificate c = solve_U(t, 0.5, 0.5);
    CAPTURE(t);
    CHECK(c.status == "optimal");
    CHECK(c.feasible);
    CHECK(c.exact);
    CHECK(c.U == doctest::Approx(expected[t - 1]).epsilon(1e-9));
    CHECK(c.min_residual >= -kLpTolerance);
  }
}

TEST_CASE("U(1) = 2/delta") {
  CHECK(solve_U(1, 0.5, 0.5).U == doctest::Approx(4.0));
  CHECK(solve_U(1, 0.3, 0.7).U == doctest::Approx(2.857142857142857).epsilon(1e-12));
}

TEST_CASE("U(t) is non-decreasing in t and stays below the closed form") {
  for (auto [alpha, delta] : {std::pair{0.5, 0.5}, std::pair{0.25, 1.0}, std::pair{0.4, 0.5}}) {
    const double ut = tilde_U(alpha, delta);
    double prev = 0.0;
    for (int t = 1; t <= 20; ++t) {
      const double u = solve_U(t, alpha, delta).U;
      CHECK(u >= prev - 1e-9);
      CHECK(leq_tol(u, ut, kLpTolerance));
      prev = u;
    }
  }
}

TEST_CASE("double simplex above the exact threshold agrees with the saturated value") {
  const DualCertificate c = solve_U(kExactLpMaxT + 4, 0.5, 0.5);
  CHECK_FALSE(c.exact);
  CHECK(c.feasible);
  CHECK(c.U == doctest::Approx(25.3952).epsilon(1e-7));
}

TEST_CASE("closed-form U") {
  CHECK(tilde_U(0.5, 0.5) == doctest::Approx(90.71869952).epsilon(1e-10));
  CHECK_THROWS_AS(tilde_U(0.3, 0.7), ParameterError);   // 2/(αδ) not integral
  CHECK_THROWS_AS(tilde_U(0.0, 0.5), ParameterError);
  CHECK(robustness_multiplier(0.5, 0.5) ==
        doctest::Approx((4.0 * 90.71869952 + 4.0) / 0.5 + 2.0 * 90.71869952 + 5.0).epsilon(1e-9));
}

TEST_CASE("closed-form dual y is feasible") {
  for (int t = 1; t <= 12; ++t) {
    const auto y = closed_form_dual_y(t, 0.5, 0.5);
    double U = -kInfinity;
    for (int s = 1; s <= t; ++s) {
      double tail = 0.0;
      for (int i = s; i <= t; ++i) tail += y[static_cast<std::size_t>(i - 1)];
      U = std::max(U, 2.0 * y[static_cast<std::size_t>(s - 1)] + 0.5 * tail - 1.0);
    }
    CHECK(check_dual(t, 0.5, 0.5, y, U).feasible);
  }
}

TEST_CASE("check_dual flags an infeasible point") {
  const DualCertificate c = check_dual(2, 0.5, 0.5, {0.0, 0.0}, 0.0);
  CHECK_FALSE(c.feasible);
  CHECK(c.min_residual < 0);
  CHECK(c.status == "candidate");
}

TEST_CASE("L(t) primal table") {
  struct Row {
    double delta;
    int t;
    double L;
  };
  const Row rows[] = {{0.5, 4, 10.765139893345026}, {1.0, 4, 6.590277777777778}, {0.25, 6, 46.19891356561859}};
  for (const Row& r : rows) {
    const double alpha = 2.0 / (r.t * r.delta * (1.0 + r.delta) + 1.0 - r.delta * r.delta);
    CAPTURE(r.delta);
    CHECK(lower_bound_horizon(alpha, r.delta) == doctest::Approx(r.t));
    const PrimalCertificate lp = solve_L(r.t, alpha, r.delta);
    CHECK(lp.status == "optimal");
    CHECK(lp.feasible);
    CHECK(lp.objective == doctest::Approx(r.L).epsilon(1e-9));
    CHECK(primal_objective(alpha, r.delta, lp.Delta) == doctest::Approx(lp.objective).epsilon(1e-12));

    const auto cf = closed_form_Delta(r.t, alpha, r.delta);
    const PrimalCertificate chk = check_primal(r.t, alpha, r.delta, cf);
    CHECK(chk.feasible);
    CHECK(chk.objective <= lp.objective + 1e-9);
    CHECK(closed_form_L_objective(r.t, alpha, r.delta) ==
          doctest::Approx(primal_objective(alpha, r.delta, cf)).epsilon(1e-10));
  }
}

TEST_CASE("closed-form Delta at alpha = 0.25, delta = 1, t = 4") {
  const auto d = closed_form_Delta(4, 0.25, 1.0);
  REQUIRE(d.size() == 4u);
  CHECK(d[0] == doctest::Approx(1.0));
  CHECK(d[1] == doctest::Approx(8.0 / 9.0));
  CHECK(d[2] == doctest::Approx(16.0 / 27.0));
  CHECK(d[3] == doctest::Approx(0.0));
  CHECK(closed_form_L_objective(4, 0.25, 1.0) == doctest::Approx(49.0 / 9.0));
}

TEST_CASE("growth ratio and horizon") {
  CHECK(growth_ratio(0.5, 0.5) == doctest::Approx(1.6));
  CHECK(lower_bound_horizon(0.25, 1.0) == doctest::Approx(4.0));
  CHECK_THROWS_AS(lower_bound_horizon(0.0, 1.0), ParameterError);
}

TEST_CASE("LP guards") {
  CHECK_THROWS_AS(solve_U(0, 0.5, 0.5), ParameterError);
  CHECK_THROWS_AS(solve_U(kMaxCertificateT + 1, 0.5, 0.5), ParameterError);
  CHECK_THROWS_AS(solve_L(3, -0.5, 0.5), ParameterError);
  CHECK_THROWS_AS(solve_L(3, 0.5, 0.0), ParameterError);
}

TEST_CASE("admissible alpha is the largest value below alpha with 2/(alpha delta) integral") {
  CHECK(admissible_alpha(0.5, 0.5) == 0.5);
  CHECK(admissible_alpha(0.3, 0.7) == doctest::Approx(2.0 / (0.7 * 10.0)));
  for (double a : {0.013, 0.2, 0.37, 0.9}) {
    for (double d : {0.01, 0.1, 0.5, 1.0}) {
      const double ap = admissible_alpha(a, d);
      CHECK(ap <= a * (1 + 1e-12));
      const double k = 2.0 / (ap * d);
      CHECK(k == doctest::Approx(std::round(k)).epsilon(1e-9));
      CHECK(2.0 / (d * (std::round(k) - 1.0)) > a * (1 - 1e-12));
    }
  }
  // already admissible values survive floating-point noise
  CHECK(admissible_alpha(2.0 / (3.0 * 0.1), 0.1) == doctest::Approx(2.0 / 0.3));
}

TEST_CASE("competitive-ratio bounds") {
  CHECK(aos_consistency_bound(0.5, 0.0).value == 2.0);
  CHECK(aos_consistency_bound(0.5, 1.0).value == 6.0);
  const double rob = robustness_multiplier(0.5, 0.5) * 4.0;
  CHECK(aos_robustness_bound(0.5, 0.5).value == doctest::Approx(rob));
  CHECK(aos_bound(0.5, 0.5, 1e9).value == doctest::Approx(rob));
  CHECK(aos_bound(0.5, 0.5, 0.0).value == 2.0);
  CHECK(memoryless_lower_bound(0.01).value == doctest::Approx(3.5355339059327378));
  CHECK_THROWS_AS(memoryless_lower_bound(0.25), ParameterError);
  CHECK(aobd_bound_delta(0.5, 0.0).value == doctest::Approx(1.5));
  CHECK(aobd_bound_delta(0.5, 100.0).value == doctest::Approx(1.0 + 6.0 + 8.0));
  CHECK_THROWS_AS(aobd_bound_delta(3.0, 0.0), ParameterError);
  // with β̄ = 1/δ and β̲ = δ/(2+δ) the general form reduces to the δ form
  for (double delta : {0.1, 0.5, 1.0, 2.0}) {
    for (double eta : {0.0, 0.3, 5.0}) {
      CHECK(aobd_bound(delta / (2.0 + delta), 1.0 / delta, eta).value ==
            doctest::Approx(aobd_bound_delta(delta, eta).value));
    }
  }
  CHECK(one_dim_lower_bound(0.25).value == 2.0);
  CHECK_THROWS_AS(one_dim_lower_bound(0.5), ParameterError);
  CHECK(consistency_robustness_lower_bound(0.25, 1.0).value == doctest::Approx(6.590277777777778));
  CHECK_THROWS_AS(consistency_robustness_lower_bound(0.3, 0.7), ParameterError);
}

TEST_CASE("applicable_bounds skips what does not apply and says why") {
  const BoundSet s = applicable_bounds(0.3, 0.7, 0.5, 0.7 / 2.7, 1.0 / 0.7);
  bool has_consistency = false;
  for (const auto& b : s.reports) has_consistency |= b.id == "aos.consistency";
  CHECK(has_consistency);
  CHECK_FALSE(s.skipped.empty());
  for (const auto& why : s.skipped) CHECK(why.find(':') != std::string::npos);

  const BoundSet all = applicable_bounds(0.25, 1.0, 0.0, 1.0 / 3.0, 1.0);
  std::size_t n = all.reports.size() + all.skipped.size();
  CHECK(n == 8u);
}
