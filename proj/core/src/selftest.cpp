#include "soco/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "soco/adversarial.hpp"
#include "soco/aobd.hpp"
#include "soco/aos.hpp"
#include "soco/bounds.hpp"
#include "soco/microgrid.hpp"
#include "soco/offline.hpp"

namespace soco {

namespace {

std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

DiscreteSpace random_space(std::mt19937_64& rng) {
  switch (uniform_index(rng, 0, 2)) {
    case 0: {
      const std::size_t n = uniform_index(rng, 4, 64);
      std::vector<Vec2> pts(n);
      for (Vec2& p : pts) p = {uniform(rng, 0, 10), uniform(rng, 0, 10)};
      std::vector<double> d(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) d[i * n + k] = norm(pts[i] - pts[k]);
      return DiscreteSpace::from_matrix(n, std::move(d));
    }
    case 1: {
      const std::size_t n = uniform_index(rng, 4, 64);
      std::vector<double> xs(n);
      for (double& x : xs) x = uniform(rng, -10, 10);
      return DiscreteSpace::on_line(std::move(xs));
    }
    default:
      return DiscreteSpace::binary_cube(static_cast<int>(uniform_index(rng, 2, 6)), uniform(rng, 0.5, 3.0));
  }
}

using Clock = std::chrono::steady_clock;

/// Times `body`, which fills pass/detail, and applies the budget.
SuiteResult timed(int id, std::string name, double budget, const std::function<void(SuiteResult&)>& body) {
  SuiteResult r;
  r.id = id;
  r.name = std::move(name);
  r.budget_seconds = budget;
  const auto start = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (r.seconds >= budget) {
    r.pass = false;
    r.detail += " [over the " + std::to_string(static_cast<int>(budget)) + " s budget]";
  }
  return r;
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

constexpr std::size_t kSuiteInstances = 500;
constexpr double kDeltas[] = {0.1, 0.5, 1.0};

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ull + i + 0x632BE59BD9B4E019ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

RandomFinite random_finite(std::uint64_t seed) {
  static constexpr double kAlphas[] = {0.2, 0.25, 0.4, 0.5, 0.8, 1.0};
  std::mt19937_64 rng(seed);
  DiscreteSpace space = random_space(rng);
  const std::size_t n = space.size();
  const std::size_t T = uniform_index(rng, 1, 50);
  const double alpha = kAlphas[uniform_index(rng, 0, 5)];
  std::vector<TableCost> costs;
  for (std::size_t t = 0; t < T; ++t) {
    const std::size_t v = uniform_index(rng, 0, n - 1);
    const double base = uniform(rng, 0, 3);
    const double roughness = coin(rng, 0.5) ? 0.0 : uniform(rng, 0, 2);
    std::vector<double> vals(n);
    for (std::size_t x = 0; x < n; ++x) {
      vals[x] = base + alpha * space.distance(x, v) + roughness * uniform(rng, 0, 1);
      if (x != v && coin(rng, 0.03)) vals[x] = kInfinity;
    }
    vals[v] = base;
    costs.emplace_back(std::move(vals));
  }
  const std::size_t x0 = uniform_index(rng, 0, n - 1);
  Instance<DiscreteSpace> inst(std::move(space), x0, std::move(costs), Switching::metric, alpha);
  const int mode = static_cast<int>(uniform_index(rng, 0, 2));
  PredictionSeq<std::size_t> preds;
  if (mode == 0) {
    for (std::size_t t = 0; t < T; ++t) preds.push_back(uniform_index(rng, 0, n - 1));
  } else {
    preds = opt_dp_finite(inst).decisions;
    if (mode == 1) {
      for (auto& p : preds)
        if (coin(rng, 0.3)) p = uniform_index(rng, 0, n - 1);
    }
  }
  return {std::move(inst), std::move(preds), alpha, mode};
}

RandomConvexLine random_convex_line(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t T = uniform_index(rng, 1, 30);
  std::vector<LineCost> costs;
  for (std::size_t t = 0; t < T; ++t) {
    if (coin(rng, 0.25)) {
      costs.emplace_back(PiecewiseLinear::abs(uniform(rng, 0.1, 3), uniform(rng, -5, 5), uniform(rng, 0, 1)));
      continue;
    }
    const std::size_t k = uniform_index(rng, 1, 4);
    std::vector<double> knots(k), slopes(k + 1);
    for (double& x : knots) x = uniform(rng, -5, 5);
    for (double& s : slopes) s = uniform(rng, -3, 3);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    slopes.resize(knots.size() + 1);
    std::sort(slopes.begin(), slopes.end());
    slopes.front() = std::min(slopes.front(), -0.1);
    slopes.back() = std::max(slopes.back(), 0.1);
    std::vector<double> vals(knots.size(), 0.0);
    for (std::size_t i = 1; i < knots.size(); ++i) vals[i] = vals[i - 1] + slopes[i] * (knots[i] - knots[i - 1]);
    const double shift = uniform(rng, 0, 1) - *std::min_element(vals.begin(), vals.end());
    for (double& v : vals) v += shift;
    costs.emplace_back(PiecewiseLinear(knots, vals, slopes.front(), slopes.back()));
  }
  const double x0 = uniform(rng, -3, 3);
  PredictionSeq<double> preds;
  for (std::size_t t = 0; t < T; ++t) preds.push_back(uniform(rng, -6, 6));
  return {Instance<RealLine>(RealLine{}, x0, std::move(costs)), std::move(preds)};
}

double brute_force_optimum(const Instance<DiscreteSpace>& inst) {
  const std::size_t n = inst.space().size(), T = inst.horizon();
  double best = std::pow(static_cast<double>(n), static_cast<double>(T));
  if (best > 1e7) throw SizeError("enumeration would visit more than 1e7 sequences");
  best = kInfinity;
  std::vector<std::size_t> seq(T, 0);
  while (true) {
    double total = 0.0;
    std::size_t prev = inst.x0();
    for (std::size_t t = 0; t < T; ++t) {
      total += inst.cost(t + 1)(seq[t]) + inst.space().distance(prev, seq[t]);
      prev = seq[t];
    }
    best = std::min(best, total);
    std::size_t i = 0;
    while (i < T && ++seq[i] == n) seq[i++] = 0;
    if (i == T) break;
  }
  return best;
}

SuiteResult consistency_suite(const SelftestOptions& opt) {
  return timed(1, "consistency: AOS <= (1+2 delta) FtP", 60.0, [&](SuiteResult& r) {
    std::size_t runs = 0, bad = 0;
    double worst = kInfinity;
    for (std::size_t i = 0; i < kSuiteInstances; ++i) {
      const RandomFinite rf = random_finite(derive_seed(opt.seed, i));
      const double ftp = run_ftp(rf.instance, rf.predictions).total;
      for (double delta : kDeltas) {
        const auto aos = run_aos(rf.instance, rf.predictions, delta);
        ++runs;
        const double rhs = (1.0 + 2.0 * delta) * ftp;
        if (!leq_tol(aos.trajectory.total, rhs)) ++bad;
        worst = std::min(worst, aos_stage_slack(rf.instance.space(), aos.log, delta));
      }
    }
    r.pass = bad == 0 && runs == 3 * kSuiteInstances;
    r.detail = std::to_string(runs) + " runs, " + std::to_string(bad) + " violations, min stage slack " + fmt(worst);
  });
}

SuiteResult robustness_suite(const SelftestOptions& opt) {
  return timed(2, "robustness: AOS <= ((4U+4)/delta + 2U + 5) greedy", 60.0, [&](SuiteResult& r) {
    std::size_t checked = 0, skipped = 0, bad = 0;
    std::set<std::pair<double, double>> pairs;
    double worst_ratio = 0.0;
    for (std::size_t i = 0; i < kSuiteInstances; ++i) {
      const RandomFinite rf = random_finite(derive_seed(opt.seed, i));
      const double greedy = run_greedy(rf.instance).total;
      for (double delta : kDeltas) {
        const double a = admissible_alpha(rf.alpha, delta);
        if (!(2.0 - a - delta * (1.0 + a) > 0)) {
          ++skipped;
          continue;
        }
        const double m = robustness_multiplier(a, delta);
        const double aos = run_aos(rf.instance, rf.predictions, delta).trajectory.total;
        ++checked;
        pairs.emplace(a, delta);
        if (!leq_tol(aos, m * greedy)) ++bad;
        if (greedy > 0) worst_ratio = std::max(worst_ratio, aos / (m * greedy));
      }
    }
    r.pass = bad == 0 && checked > 0;
    r.detail = std::to_string(checked) + " runs over " + std::to_string(pairs.size()) + " (alpha, delta) pairs, " +
               std::to_string(skipped) + " outside the regime, " + std::to_string(bad) +
               " violations, max AOS/bound " + fmt(worst_ratio);
  });
}

SuiteResult ftp_suite(const SelftestOptions& opt) {
  return timed(3, "FtP: FtP <= blind and FtP <= (1+2 eta) OPT", 60.0, [&](SuiteResult& r) {
    std::size_t bad_blind = 0, bad_opt = 0, degenerate = 0;
    for (std::size_t i = 0; i < kSuiteInstances; ++i) {
      const RandomFinite rf = random_finite(derive_seed(opt.seed, i));
      const double ftp = run_ftp(rf.instance, rf.predictions).total;
      const double blind = run_blind(rf.instance, rf.predictions).total;
      const auto o = opt_dp_finite(rf.instance);
      const EtaAccuracy eta = eta_accuracy(rf.instance, rf.predictions, o);
      if (!leq_tol(ftp, blind)) ++bad_blind;
      if (eta.degenerate) {
        ++degenerate;
        continue;
      }
      if (!leq_tol(ftp, (1.0 + 2.0 * eta.eta) * o.total)) ++bad_opt;
    }
    r.pass = bad_blind == 0 && bad_opt == 0;
    r.detail = std::to_string(kSuiteInstances) + " instances, " + std::to_string(bad_blind) + " blind violations, " +
               std::to_string(bad_opt) + " OPT violations, " + std::to_string(degenerate) + " with OPT = 0";
  });
}

SuiteResult certificate_suite(const SelftestOptions&) {
  return timed(4, "certificates at alpha = delta = 0.5", 10.0, [&](SuiteResult& r) {
    const double alpha = 0.5, delta = 0.5;
    const double ut = tilde_U(alpha, delta);
    bool ok = true, monotone = true;
    double prev = -kInfinity, worst_residual = kInfinity;
    std::ostringstream us;
    for (int t = 1; t <= 8; ++t) {
      std::vector<double> y = closed_form_dual_y(t, alpha, delta);
      double U = -kInfinity;
      for (int s = 1; s <= t; ++s) {
        double tail = 0.0;
        for (int i = s; i <= t; ++i) tail += y[static_cast<std::size_t>(i - 1)];
        U = std::max(U, 2.0 * y[static_cast<std::size_t>(s - 1)] + delta * tail - 1.0);
      }
      const DualCertificate closed = check_dual(t, alpha, delta, y, U);
      worst_residual = std::min(worst_residual, closed.min_residual);
      const DualCertificate lp = solve_U(t, alpha, delta);
      ok = ok && closed.feasible && lp.status == "optimal" && lp.feasible && leq_tol(lp.U, ut, kLpTolerance);
      if (t == 1) ok = ok && std::fabs(lp.U - 2.0 / delta) <= 1e-12;
      monotone = monotone && lp.U >= prev - 1e-9;
      prev = lp.U;
      us << (t > 1 ? " " : "") << fmt(lp.U);
    }
    r.pass = ok;
    r.detail = "U(1..8) = " + us.str() + " <= U~ = " + fmt(ut) + ", closed-form y min residual " +
               fmt(worst_residual) + (monotone ? ", U(t) non-decreasing" : ", U(t) NOT monotone");
  });
}

SuiteResult lower_bound_suite(const SelftestOptions&) {
  return timed(5, "lower bound: closed-form Delta feasible, blind CR >= 0.999 L(t)", 10.0, [&](SuiteResult& r) {
    // (δ, t) with α chosen so that the horizon formula gives exactly t.
    const std::pair<double, int> cases[] = {{0.5, 4}, {1.0, 4}, {0.25, 6}};
    bool ok = true;
    std::ostringstream os;
    for (auto [delta, t] : cases) {
      const double alpha = 2.0 / (t * delta * (1.0 + delta) + 1.0 - delta * delta);
      const double th = lower_bound_horizon(alpha, delta);
      const PrimalCertificate cf = check_primal(t, alpha, delta, closed_form_Delta(t, alpha, delta));
      const LowerBoundInstance lb = gen_lower_bound_instance(alpha, delta);
      const double blind = run_blind(lb.instance, lb.predictions).total;
      const double cr = measured_ratio(blind, opt_dp_finite(lb.instance).total);
      const bool good = std::fabs(th - t) <= 1e-9 * t && lb.t == t && cf.feasible && cr >= 0.999 * lb.lp_value;
      ok = ok && good;
      os << " (a=" << fmt(alpha) << ", d=" << fmt(delta) << ", t=" << t << ": CR " << fmt(cr) << " vs L "
         << fmt(lb.lp_value) << ")";
    }
    r.pass = ok;
    r.detail = "triples" + os.str();
  });
}

SuiteResult one_dim_game_suite(const SelftestOptions&) {
  return timed(6, "one-dimensional game", 10.0, [&](SuiteResult& r) {
    bool ok = true;
    std::ostringstream os;
    for (double delta : {0.1, 0.25, 0.4}) {
      BlindPolicy<RealLine> blind;
      const OneDimGame gb = play_one_dim_game(blind, delta);
      const bool robust_gap = gb.branch == 1 && gb.cr[0] >= 1.0 / (2.0 * delta) - 1e-6;
      AobdPolicy aobd(AobdParams::from_delta(delta));
      const OneDimGame ga = play_one_dim_game(aobd, delta);
      const bool consistent = ga.alg_cost[1] <= (1.0 + delta) * ga.opt_grid[1] + ga.grid_error[1];
      ok = ok && robust_gap && consistent;
      os << " d=" << fmt(delta) << ": blind CR " << fmt(gb.cr[0]) << ", AOBD branch-2 " << fmt(ga.alg_cost[1])
         << " vs " << fmt((1.0 + delta) * ga.opt_grid[1] + ga.grid_error[1]) << ";";
    }
    r.pass = ok;
    r.detail = os.str();
  });
}

SuiteResult memoryless_game_suite(const SelftestOptions&) {
  return timed(7, "memoryless game at alpha = 0.01", 10.0, [&](SuiteResult& r) {
    const double alpha = 0.01;
    BlindPolicy<Plane> blind;
    const MemorylessGame g = play_memoryless_game(blind, alpha, 200);
    const double target = 0.8 * memoryless_lower_bound(alpha).value;
    r.pass = g.transcript.cr > target;
    r.detail = "blind CR over 200 rounds " + fmt(g.transcript.cr) + " > " + fmt(target);
  });
}

SuiteResult aobd_suite(const SelftestOptions& opt) {
  return timed(8, "AOBD on random convex 1-D instances", 60.0, [&](SuiteResult& r) {
    const AobdParams params[] = {{0.2, 5.0}, AobdParams::from_delta(1.0)};
    std::size_t bad_opt = 0, bad_ftp = 0;
    for (std::size_t i = 0; i < 200; ++i) {
      const RandomConvexLine rl = random_convex_line(derive_seed(opt.seed ^ 0xA0BDull, i));
      const GridOptimum g = opt_dp_grid(rl.instance, default_grid(rl.instance, 1.0 / 256.0));
      const double ftp = run_ftp(rl.instance, rl.predictions).total;
      for (const AobdParams& p : params) {
        const double alg = run_aobd(rl.instance, rl.predictions, p).total;
        if (!leq_tol(alg, (1.0 + (2.0 + 1.0 / p.beta_lo) * p.beta_hi) * (g.trajectory.total + g.error_bound))) {
          ++bad_opt;
        }
        if (!leq_tol(alg, (1.0 + (2.0 + 1.0 / p.beta_hi) * p.beta_lo) * ftp)) ++bad_ftp;
      }
    }
    r.pass = bad_opt == 0 && bad_ftp == 0;
    r.detail = "400 runs, " + std::to_string(bad_opt) + " OPT violations, " + std::to_string(bad_ftp) +
               " FtP violations";
  });
}

SuiteResult microgrid_suite(const SelftestOptions& opt) {
  return timed(9, "microgrid trends", 300.0, [&](SuiteResult& r) {
    using namespace microgrid;
    SweepConfig cfg;
    cfg.seeds.clear();
    for (std::uint64_t s = 0; s < 10; ++s) cfg.seeds.push_back(opt.seed + s);
    cfg.T = 96;
    cfg.deltas = {0.01, 0.1};
    cfg.perturbations = {{PerturbMode::gaussian, 0.0}, {PerturbMode::gaussian, 0.5}, {PerturbMode::gaussian, 2.0}};
    cfg.jobs = opt.jobs;
    const std::vector<SweepRow> rows = run_sweep(cfg);
    std::size_t violations = 0, near_blind = 0, near_greedy = 0;
    for (const SweepRow& row : rows) {
      violations += row_violations(row).size();
      if (row.delta != 0.01) continue;
      if (row.sigma == 0.0 && row.cost_aos <= 1.05 * row.cost_blind) ++near_blind;
      if (row.sigma == 2.0 && row.cost_aos <= 1.2 * row.cost_greedy) ++near_greedy;
    }
    r.pass = violations == 0 && near_blind >= 8 && near_greedy >= 8;
    r.detail = std::to_string(rows.size()) + " rows, " + std::to_string(violations) +
               " inequality violations; sigma=0: AOS <= 1.05 blind on " + std::to_string(near_blind) +
               "/10; sigma=2: AOS <= 1.2 greedy on " + std::to_string(near_greedy) + "/10";
  });
}

SuiteResult oracle_suite(const SelftestOptions& opt) {
  return timed(10, "DP optimum equals enumeration", 30.0, [&](SuiteResult& r) {
    std::size_t bad = 0;
    for (std::size_t i = 0; i < 100; ++i) {
      std::mt19937_64 rng(derive_seed(opt.seed ^ 0x0AC1Eull, i));
      const std::size_t n = uniform_index(rng, 2, 6), T = uniform_index(rng, 1, 4);
      // integer points in Z² under L1: every sum below is exact in double
      std::set<std::pair<int, int>> seen;
      std::vector<std::pair<int, int>> pts;
      while (pts.size() < n) {
        std::pair<int, int> p{static_cast<int>(uniform_index(rng, 0, 6)), static_cast<int>(uniform_index(rng, 0, 6))};
        if (seen.insert(p).second) pts.push_back(p);
      }
      std::vector<double> d(n * n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          d[a * n + b] = std::abs(pts[a].first - pts[b].first) + std::abs(pts[a].second - pts[b].second);
      std::vector<TableCost> costs;
      for (std::size_t t = 0; t < T; ++t) {
        std::vector<double> vals(n);
        for (double& v : vals) v = coin(rng, 0.1) ? kInfinity : static_cast<double>(uniform_index(rng, 0, 10));
        vals[uniform_index(rng, 0, n - 1)] = static_cast<double>(uniform_index(rng, 0, 10));
        costs.emplace_back(std::move(vals));
      }
      const Instance<DiscreteSpace> inst(DiscreteSpace::from_matrix(n, std::move(d)), uniform_index(rng, 0, n - 1),
                                         std::move(costs));
      if (opt_dp_finite(inst).total != brute_force_optimum(inst)) ++bad;
    }
    r.pass = bad == 0;
    r.detail = "100 instances, " + std::to_string(bad) + " mismatches";
  });
}

std::vector<SuiteResult> run_selftest(const SelftestOptions& opt) {
  return {consistency_suite(opt), robustness_suite(opt),  ftp_suite(opt),       certificate_suite(opt),
          lower_bound_suite(opt), one_dim_game_suite(opt), memoryless_game_suite(opt), aobd_suite(opt),
          microgrid_suite(opt),   oracle_suite(opt)};
}

std::string format_result(const SuiteResult& r) {
  char head[160];
  std::snprintf(head, sizeof head, "%s [%d] %s (%.2f s of %.0f s): ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds, r.budget_seconds);
  return head + r.detail;
}

}  // namespace soco
