#include "soco/adversarial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>

#include "soco/bounds.hpp"
#include "soco/offline.hpp"

namespace soco {

double measured_ratio(double alg, double base) {
  if (base > 0) return alg / base;
  return alg > 0 ? kInfinity : 1.0;
}

namespace {

std::string describe(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------

LowerBoundInstance gen_lower_bound_instance(double alpha, double delta, DeltaSource source) {
  if (!(alpha > 0) || !(delta > 0)) throw ParameterError("alpha and delta must be positive");
  const double th = lower_bound_horizon(alpha, delta);
  const double rounded = std::round(th);
  if (rounded < 1 || rounded > kMaxCertificateT) {
    throw ParameterError("no integral horizon in 1.." + std::to_string(kMaxCertificateT) +
                         " near t = " + describe(th));
  }
  const int t = static_cast<int>(rounded);
  const bool adjusted = std::fabs(th - rounded) > 1e-9 * rounded;
  const double a = adjusted ? 2.0 / (rounded * delta * (1.0 + delta) + 1.0 - delta * delta) : alpha;
  const PrimalCertificate lp = solve_L(t, a, delta);
  if (lp.status != "optimal") throw ParameterError("lower-bound LP is " + lp.status);
  std::vector<double> Delta = source == DeltaSource::lp ? lp.Delta : closed_form_Delta(t, a, delta);
  for (double& d : Delta) d = std::max(d, 0.0);

  std::map<double, std::size_t> index;  // coordinate → space index, in order of first use
  std::vector<double> coords;
  auto intern = [&](double x) {
    auto [it, fresh] = index.emplace(x, coords.size());
    if (fresh) coords.push_back(x);
    return it->second;
  };
  const std::size_t origin = intern(0.0);
  const std::size_t minimizer = intern(-1.0);
  std::vector<double> points;
  std::vector<std::size_t> advice_idx;
  double p = 0.0;
  for (double d : Delta) {
    p += d;
    points.push_back(p);
    advice_idx.push_back(intern(p));
  }
  std::vector<TableCost> costs;
  for (std::size_t s = 0; s < Delta.size(); ++s) {
    std::vector<double> vals(coords.size(), kInfinity);
    vals[advice_idx[s]] = a * (1.0 + points[s]);
    vals[minimizer] = 0.0;
    costs.emplace_back(std::move(vals));
  }
  return LowerBoundInstance{
      Instance<DiscreteSpace>(DiscreteSpace::on_line(coords), origin, std::move(costs), Switching::metric, a),
      advice_idx, a, delta, t, adjusted, std::move(Delta), std::move(points), coords, minimizer, lp.objective};
}

GameTranscript play_lower_bound_instance(const LowerBoundInstance& lb, OnlinePolicy<DiscreteSpace>& alg) {
  const auto traj = run_policy(alg, lb.instance, lb.predictions);
  const double opt = opt_dp_finite(lb.instance).total;
  GameTranscript tr;
  tr.game = "lower-bound";
  tr.algorithm = alg.name();
  tr.params = {{"alpha", lb.alpha}, {"delta", lb.delta}, {"t", static_cast<double>(lb.t)}};
  for (std::size_t t = 1; t <= traj.horizon(); ++t) {
    const std::size_t x = traj.decisions[t - 1];
    tr.rounds.push_back({t, "alpha|x+1| on {-1, " + describe(lb.advice_points[t - 1]) + "}",
                         {lb.coordinates[lb.predictions[t - 1]]},
                         {lb.coordinates[x]},
                         x == lb.minimizer_index ? 1 : 2});
  }
  tr.alg_cost = traj.total;
  tr.baseline_cost = opt;
  tr.cr = measured_ratio(traj.total, opt);
  tr.extras = {{"lp_value", lb.lp_value}, {"alpha_adjusted", lb.alpha_adjusted ? 1.0 : 0.0}};
  return tr;
}

// ---------------------------------------------------------------------------

namespace {

// Similarity frame z ↦ origin + scale·R z with R a rotation matrix.
struct Frame {
  std::array<double, 4> R{1.0, 0.0, 0.0, 1.0};  // row-major
  double scale = 1.0;
  Vec2 origin{};

  Vec2 rotate(Vec2 z) const { return {R[0] * z.x + R[1] * z.y, R[2] * z.x + R[3] * z.y}; }
  Vec2 rotate_back(Vec2 z) const { return {R[0] * z.x + R[2] * z.y, R[1] * z.x + R[3] * z.y}; }
  Vec2 map(Vec2 z) const { return origin + scale * rotate(z); }
  Vec2 unmap(Vec2 w) const { return (1.0 / scale) * rotate_back(w - origin); }
  double det() const { return R[0] * R[3] - R[1] * R[2]; }

  // Compose with a canonical-frame step: new map = old map ∘ (rotation by
  // phi and scaling by sigma about the canonical pivot).
  void step(Vec2 pivot, double phi, double sigma, std::size_t& reorth) {
    const double c = std::cos(phi), s = std::sin(phi);
    std::array<double, 4> n{R[0] * c + R[1] * s, -R[0] * s + R[1] * c, R[2] * c + R[3] * s,
                            -R[2] * s + R[3] * c};
    const Vec2 pivot_image = map(pivot);
    R = n;
    scale *= sigma;
    if (std::fabs(det() - 1.0) > 1e-12) {
      double len = std::hypot(R[0], R[2]);
      R = {R[0] / len, -R[2] / len, R[2] / len, R[0] / len};
      ++reorth;
    }
    origin = pivot_image - scale * rotate(pivot);
  }
};

double angle(Vec2 a) { return std::atan2(a.y, a.x); }

}  // namespace

MemorylessGame play_memoryless_game(OnlinePolicy<Plane>& alg, double alpha, std::size_t rounds,
                                    double penalty) {
  if (!(alpha > 0) || !(alpha < 0.25)) throw ParameterError("memoryless game needs 0 < alpha < 1/4");
  if (rounds < 1) throw ParameterError("memoryless game needs at least one round");
  const double r1 = alpha, r2 = std::sqrt(2.0 * alpha);
  const Vec2 prev_c{0.0, r2};
  const Vec2 v_c{-(r2 * r2 - r1 * r1) / (2.0 * r1), 0.0};
  const Vec2 adv_c{std::sqrt(1.0 - r2 * r2), 0.0};
  const Vec2 normal_c{0.0, 1.0};

  MemorylessGame g{{}, Instance<Plane>(Plane{}, prev_c, {ConeCost(alpha, v_c, normal_c, penalty)}), {}, {}, 0.0, 0.0, {}};
  Frame frame;
  std::vector<ConeCost> costs;
  std::vector<Vec2> decisions, minimizers;
  alg.reset(prev_c);
  for (std::size_t t = 1; t <= rounds; ++t) {
    const Vec2 v = frame.map(v_c);
    const Vec2 adv = frame.map(adv_c);
    const Vec2 normal = frame.rotate(normal_c);
    ConeCost f(alpha, v, normal, penalty);
    const Vec2 x = alg.decide(f, adv);
    if (!Plane{}.contains(x)) throw InvalidDecision("algorithm left the plane in round " + std::to_string(t));
    const double off = std::fabs(dot(x - v, f.normal()));
    g.max_off_axis = std::max(g.max_off_axis, off / frame.scale);
    g.penalty_paid += penalty * off;
    costs.push_back(f);
    g.predictions.push_back(adv);
    decisions.push_back(x);
    minimizers.push_back(v);

    const Vec2 z = frame.unmap(x);
    const int which = z.x > r1 ? 1 : 2;
    g.cases.push_back(which);
    g.transcript.rounds.push_back({t, "cone alpha=" + describe(alpha) + " vertex=(" + describe(v.x) + "," +
                                          describe(v.y) + ")",
                                   {adv.x, adv.y}, {x.x, x.y}, which});
    const Vec2 pivot = which == 1 ? v_c : adv_c;
    const double from = norm(prev_c - pivot), to = norm(z - pivot);
    if (!(to > 0)) throw ModelViolation("degenerate memoryless game: decision coincides with the pivot");
    frame.step(pivot, angle(z - pivot) - angle(prev_c - pivot), to / from, g.reorthogonalizations);
  }
  g.instance = Instance<Plane>(Plane{}, prev_c, std::move(costs), Switching::metric, alpha);
  g.alg = evaluate(g.instance, decisions);
  g.follow_advice_cost = evaluate(g.instance, g.predictions).total;
  g.follow_minimizers_cost = evaluate(g.instance, minimizers).total;
  const double base = std::min(g.follow_advice_cost, g.follow_minimizers_cost);

  auto& tr = g.transcript;
  tr.game = "memoryless";
  tr.algorithm = alg.name();
  tr.params = {{"alpha", alpha}, {"rounds", static_cast<double>(rounds)}, {"penalty", penalty}};
  tr.alg_cost = g.alg.total;
  tr.baseline_cost = base;
  tr.baseline_label = "comparison";
  tr.cr = measured_ratio(g.alg.total, base);
  tr.branch = g.cases.front();
  tr.extras = {{"follow_advice_cost", g.follow_advice_cost},
               {"follow_minimizers_cost", g.follow_minimizers_cost},
               {"max_off_axis", g.max_off_axis},
               {"penalty_paid", g.penalty_paid},
               {"reorthogonalizations", static_cast<double>(g.reorthogonalizations)}};
  return g;
}

MemorylessCaseBounds memoryless_case_bounds(double alpha) {
  if (!(alpha > 0) || !(alpha < 0.25)) throw ParameterError("memoryless bounds need 0 < alpha < 1/4");
  const double q = std::sqrt(1.0 - 2.0 * alpha);
  const double reach = alpha / 2.0 + 1.0 + q;  // (r₁²+r₂²)/(2r₁) + √(1−r₂²)
  MemorylessCaseBounds b;
  b.far = std::sqrt(2.0 - 2.0 * q) / (alpha * reach);
  b.near = (std::sqrt(alpha * alpha + 2.0 * alpha) + alpha * (alpha + 1.0 - alpha / 2.0)) /
           (1.0 - q + alpha + alpha * reach);
  b.leading = 1.0 / std::sqrt(8.0 * alpha);
  return b;
}

double memoryless_case2_ratio(double alpha, double x1, std::size_t T) {
  if (!(alpha > 0) || !(alpha < 0.25)) throw ParameterError("memoryless bounds need 0 < alpha < 1/4");
  const double r1 = alpha, r2 = std::sqrt(2.0 * alpha);
  const double s = std::sqrt(1.0 - r2 * r2) - x1;
  const double alg_round = std::sqrt(x1 * x1 + r2 * r2) + alpha * std::fabs(x1 + (r2 * r2 - r1 * r1) / (2.0 * r1));
  const double opt_round = alpha * ((r1 * r1 + r2 * r2) / (2.0 * r1) + std::sqrt(1.0 - r2 * r2));
  double geo = 0.0, pw = 1.0;
  for (std::size_t t = 0; t < T; ++t) {
    geo += pw;
    pw *= s;
  }
  return geo * alg_round / (1.0 + geo * opt_round);
}

// ---------------------------------------------------------------------------

OneDimGame play_one_dim_game(OnlinePolicy<RealLine>& alg, double delta, double grid_h) {
  if (!(delta > 0) || !(delta < 0.5)) throw ParameterError("one-dimensional game needs 0 < delta < 1/2");
  OneDimGame g;
  const LineCost f1 = PiecewiseLinear::abs(2.0 * delta, 1.0);
  const LineCost f2[2] = {PiecewiseLinear::abs(1.0, 0.0), PiecewiseLinear::abs(1.0, 1.0)};
  const double adv2[2] = {0.0, 1.0};
  g.opt_stated[0] = 2.0 * delta;
  g.opt_stated[1] = 1.0;

  alg.reset(0.0);
  g.x1 = alg.decide(f1, 1.0);
  g.branch = g.x1 >= 0.5 ? 1 : 2;
  double x2_played = 0.0;
  for (int b = 0; b < 2; ++b) {
    Instance<RealLine> inst(RealLine{}, 0.0, {f1, f2[b]});
    PredictionSeq<double> preds{1.0, adv2[b]};
    Trajectory<double> tr = run_policy(alg, inst, preds);
    if (tr.decisions[0] != g.x1) throw ModelViolation("algorithm is not deterministic");
    g.alg_cost[b] = tr.total;
    GridOptimum opt = opt_dp_grid(inst, default_grid(inst, grid_h));
    g.opt_grid[b] = opt.trajectory.total;
    g.grid_error[b] = opt.error_bound;
    g.cr[b] = measured_ratio(tr.total, g.opt_stated[b]);
    if (b + 1 == g.branch) x2_played = tr.decisions[1];
  }
  g.consistent_on_branch2 = leq_tol(g.alg_cost[1], (1.0 + delta) * g.opt_grid[1] + g.grid_error[1]);

  auto& tr = g.transcript;
  tr.game = "one-dim";
  tr.algorithm = alg.name();
  tr.params = {{"delta", delta}};
  tr.rounds.push_back({1, "2*delta*|x-1|", {1.0}, {g.x1}, g.branch});
  tr.rounds.push_back({2, g.branch == 1 ? "|x|" : "|x-1|", {adv2[g.branch - 1]}, {x2_played}, g.branch});
  tr.alg_cost = g.alg_cost[g.branch - 1];
  tr.baseline_cost = g.opt_stated[g.branch - 1];
  tr.cr = g.cr[g.branch - 1];
  tr.branch = g.branch;
  tr.extras = {{"cost_branch1", g.alg_cost[0]},        {"cost_branch2", g.alg_cost[1]},
               {"opt_grid_branch1", g.opt_grid[0]},    {"opt_grid_branch2", g.opt_grid[1]},
               {"grid_error_branch2", g.grid_error[1]}, {"consistent_branch2", g.consistent_on_branch2 ? 1.0 : 0.0}};
  return g;
}

// ---------------------------------------------------------------------------

std::vector<double> bregman_target_optimum(double alpha, double beta, double delta, std::size_t T) {
  if (!(alpha > 0) || !(beta > 0) || !(delta > 0)) throw ParameterError("alpha, beta, delta must be positive");
  if (T < 1) throw ParameterError("horizon must be positive");
  // Rows t = 1..T of the optimality system: −x_{t−1} + (α+2)x_t − x_{t+1} = 0
  // for t < T and −x_{T−1} + (β+1)x_T = βδ, with x₀ = 0. Thomas algorithm.
  std::vector<double> diag(T, alpha + 2.0), rhs(T, 0.0), cprime(T), dprime(T);
  diag[T - 1] = beta + 1.0;
  rhs[T - 1] = beta * delta;
  for (std::size_t i = 0; i < T; ++i) {
    const double sub = i == 0 ? 0.0 : -1.0;
    const double denom = diag[i] - (i == 0 ? 0.0 : sub * cprime[i - 1]);
    cprime[i] = i + 1 < T ? -1.0 / denom : 0.0;
    dprime[i] = (rhs[i] - (i == 0 ? 0.0 : sub * dprime[i - 1])) / denom;
  }
  std::vector<double> x(T);
  x[T - 1] = dprime[T - 1];
  for (std::size_t i = T - 1; i-- > 0;) x[i] = dprime[i] - cprime[i] * x[i + 1];
  return x;
}

BregmanGame play_bregman_game(OnlinePolicy<RealLine>& alg, double alpha, double beta, double delta,
                              std::size_t T, double grid_h) {
  if (!(alpha > 0) || !(beta > 0) || !(delta > 0)) throw ParameterError("alpha, beta, delta must be positive");
  if (T < 10) throw ParameterError("the strongly convex game needs T >= 10");
  const std::vector<double> preds = bregman_target_optimum(alpha, beta, delta, T);
  const LineCost early = Quadratic{alpha, 0.0};
  std::vector<LineCost> costs(T - 1, early);
  std::vector<double> xs;
  alg.reset(0.0);
  bool moved = false;
  for (std::size_t t = 1; t < T; ++t) {
    xs.push_back(alg.decide(early, preds[t - 1]));
    moved = moved || xs.back() > 0.0;
  }
  const LineCost last = moved ? LineCost(Quadratic{beta, 0.0}) : LineCost(Quadratic{beta, delta});
  xs.push_back(alg.decide(last, preds[T - 1]));
  costs.push_back(last);

  Instance<RealLine> inst(RealLine{}, 0.0, costs, Switching::half_squared);
  BregmanGame g{{}, inst, preds, evaluate(inst, xs)};
  g.branch = moved ? 1 : 2;
  if (moved) {
    g.opt = 0.0;
  } else {
    g.opt = evaluate(inst, preds).total;
  }
  GridOptimum grid = opt_dp_grid(inst, default_grid(inst, grid_h));
  g.opt_grid = grid.trajectory.total;
  g.grid_error = grid.error_bound;
  g.asymptotic_opt = delta * delta * (-alpha + std::sqrt(alpha * alpha + 4.0 * alpha)) / 4.0;
  g.final_round_floor = delta * delta / (2.0 * (1.0 + 1.0 / beta));
  g.cr = measured_ratio(g.alg.total, g.opt);

  auto& tr = g.transcript;
  tr.game = "bregman";
  tr.algorithm = alg.name();
  tr.params = {{"alpha", alpha}, {"beta", beta}, {"delta", delta}, {"T", static_cast<double>(T)}};
  for (std::size_t t = 1; t <= T; ++t) {
    std::string desc = t < T ? "alpha*x^2/2" : (moved ? "beta*x^2/2" : "beta*(x-delta)^2/2");
    tr.rounds.push_back({t, desc, {preds[t - 1]}, {xs[t - 1]}, g.branch});
  }
  tr.alg_cost = g.alg.total;
  tr.baseline_cost = g.opt;
  tr.cr = g.cr;
  tr.branch = g.branch;
  tr.extras = {{"opt_grid", g.opt_grid},
               {"grid_error", g.grid_error},
               {"asymptotic_opt", g.asymptotic_opt},
               {"final_round_floor", g.final_round_floor}};
  return g;
}

}  // namespace soco
