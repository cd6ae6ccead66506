#include "soco/microgrid.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <thread>

#include "soco/aos.hpp"
#include "soco/bounds.hpp"
#include "soco/offline.hpp"

namespace soco::microgrid {

void Params::validate() const {
  if (fuel.empty() || fuel.size() > 12) throw ParameterError("need 1..12 generators");
  for (std::size_t i = 0; i < fuel.size(); ++i) {
    if (!(fuel[i] > 0)) throw ParameterError("fuel costs must be positive");
    for (std::size_t j = 0; j < i; ++j)
      if (fuel[i] == fuel[j]) throw ParameterError("fuel costs must be pairwise distinct");
  }
  if (!(shortfall_penalty > *std::max_element(fuel.begin(), fuel.end()))) {
    throw ParameterError("shortfall penalty must exceed every fuel cost");
  }
  if (!(generator_size > 0) || !(switch_weight > 0)) throw ParameterError("sizes and weights must be positive");
  if (!(load_lo < load_hi)) throw ParameterError("load bounds are inverted");
}

double dispatch_cost(const Params& p, std::size_t mask, double load) {
  double fuel = 0.0;
  for (int i = 0; i < p.generators(); ++i)
    if (mask >> i & 1u) fuel += p.fuel[static_cast<std::size_t>(i)];
  const double supplied = p.generator_size * std::popcount(mask);
  return fuel + p.shortfall_penalty * std::max(load - supplied, 0.0);
}

NetLoadTrace gen_netload(std::uint64_t seed, std::size_t T, const NetLoadModel& model) {
  if (T < 1) throw ParameterError("trace length must be positive");
  if (!(model.lo < model.hi)) throw ParameterError("load bounds are inverted");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> eps(0.0, model.innovation_sd);
  NetLoadTrace tr{{}, seed, model};
  tr.load.reserve(T);
  double e = 0.0;
  for (std::size_t t = 1; t <= T; ++t) {
    e = model.phi * e + eps(rng);
    const double base = model.mean + model.amplitude * std::sin(2.0 * std::numbers::pi * t / model.period);
    tr.load.push_back(std::clamp(base + e, model.lo, model.hi));
  }
  return tr;
}

namespace {

TableCost round_cost(const Params& p, double load) {
  const std::size_t n = std::size_t{1} << p.generators();
  std::vector<double> vals(n);
  for (std::size_t u = 0; u < n; ++u) vals[u] = dispatch_cost(p, u, load);
  return TableCost(std::move(vals));
}

DiscreteSpace dispatch_space(const Params& p) { return DiscreteSpace::binary_cube(p.generators(), p.switch_weight); }

}  // namespace

DispatchInstance build_instance(const NetLoadTrace& trace, const Params& params) {
  params.validate();
  const DiscreteSpace space = dispatch_space(params);
  std::vector<TableCost> costs;
  std::vector<double> alphas;
  for (double load : trace.load) {
    TableCost f = round_cost(params, load);
    const std::size_t v = f.minimizer();
    double a = kInfinity;
    for (std::size_t u = 0; u < space.size(); ++u) {
      if (u != v) a = std::min(a, (f(u) - f(v)) / space.distance(u, v));
    }
    alphas.push_back(a);
    costs.push_back(std::move(f));
  }
  const double alpha = *std::min_element(alphas.begin(), alphas.end());
  std::optional<double> declared;
  if (alpha > 0) declared = alpha;
  return {Instance<DiscreteSpace>(space, 0, std::move(costs), Switching::metric, declared), std::move(alphas),
          alpha};
}

PredictionSeq<std::size_t> mpc_predictor(const NetLoadTrace& trace, const Params& params, std::size_t W,
                                         const Perturbation& perturbation, std::uint64_t seed) {
  params.validate();
  if (W < 1) throw ParameterError("lookahead window must be at least 1");
  if (perturbation.mode == PerturbMode::gaussian && !(perturbation.value >= 0)) {
    throw ParameterError("noise level sigma must be non-negative");
  }
  const DiscreteSpace space = dispatch_space(params);
  const std::size_t T = trace.load.size();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  PredictionSeq<std::size_t> out;
  out.reserve(T);
  std::size_t prev = 0;
  std::vector<TableCost> window;
  for (std::size_t t = 0; t < T; ++t) {
    window.clear();
    window.push_back(round_cost(params, trace.load[t]));
    for (std::size_t k = 1; k <= W && t + k < T; ++k) {
      double forecast = trace.load[t + k];
      if (perturbation.mode == PerturbMode::gaussian) forecast += perturbation.value * noise(rng);
      else forecast += perturbation.value;
      window.push_back(round_cost(params, forecast));
    }
    prev = optimal_plan(space, prev, window).front();
    out.push_back(prev);
  }
  return out;
}

namespace {

std::uint64_t predictor_seed(std::uint64_t seed, const Perturbation& p) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(p.mode),
                    static_cast<std::uint32_t>(std::bit_cast<std::uint64_t>(p.value)),
                    static_cast<std::uint32_t>(std::bit_cast<std::uint64_t>(p.value) >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

void run_cell(const SweepConfig& cfg, std::uint64_t seed, const Perturbation& pert, SweepRow* rows) {
  const std::size_t nd = cfg.deltas.size();
  for (std::size_t i = 0; i < nd; ++i) {
    rows[i].seed = seed;
    rows[i].T = cfg.T;
    rows[i].delta = cfg.deltas[i];
    rows[i].sigma = pert.sigma();
    rows[i].mu = pert.mu();
  }
  try {
    const NetLoadTrace trace = gen_netload(seed, cfg.T, cfg.model);
    const DispatchInstance di = build_instance(trace, cfg.params);
    const auto& inst = di.instance;
    const auto preds = mpc_predictor(trace, cfg.params, cfg.window, pert, predictor_seed(seed, pert));
    const auto opt = opt_dp_finite(inst);
    const double greedy = run_greedy(inst).total;
    const double blind = run_blind(inst, preds).total;
    const double ftp = run_ftp(inst, preds).total;
    const EtaAccuracy eta = eta_accuracy(inst, preds, opt);
    for (std::size_t i = 0; i < nd; ++i) {
      SweepRow& r = rows[i];
      r.cost_opt = opt.total;
      r.cost_greedy = greedy;
      r.cost_blind = blind;
      r.cost_ftp = ftp;
      r.cost_aos = run_aos(inst, preds, r.delta).trajectory.total;
      r.eta = eta.eta;
      r.alpha_emp = di.alpha;
      r.bound_consistency = aos_consistency_bound(r.delta, std::isfinite(r.eta) ? r.eta : 0.0).value;
      if (!std::isfinite(r.eta)) r.bound_consistency = kInfinity;
      r.robustness_multiplier = kInfinity;
      r.bound_robustness = kInfinity;
      if (di.alpha > 0) {
        r.alpha_admissible = admissible_alpha(di.alpha, r.delta);
        try {
          r.robustness_multiplier = robustness_multiplier(r.alpha_admissible, r.delta);
          r.bound_robustness = aos_robustness_bound(r.alpha_admissible, r.delta).value;
        } catch (const ParameterError&) {
          // singular closed form: leave the bound at ∞
        }
      }
    }
  } catch (const Error& e) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < nd; ++i) {
      SweepRow& r = rows[i];
      r.cost_blind = r.cost_ftp = r.cost_greedy = r.cost_aos = r.cost_opt = nan;
      r.eta = r.alpha_emp = r.bound_consistency = r.bound_robustness = nan;
      r.error = e.what();
    }
  }
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  cfg.params.validate();
  for (double d : cfg.deltas)
    if (!(d > 0)) throw ParameterError("every delta must be positive");
  for (const auto& p : cfg.perturbations)
    if (p.mode == PerturbMode::gaussian && !(p.value >= 0)) throw ParameterError("sigma must be non-negative");
  if (cfg.T < 1 || cfg.window < 1) throw ParameterError("T and the window must be positive");

  const std::size_t nd = cfg.deltas.size(), np = cfg.perturbations.size();
  const std::size_t cells = cfg.seeds.size() * np;
  std::vector<SweepRow> rows(cells * nd);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < cells; c = next++) {
      run_cell(cfg, cfg.seeds[c / np], cfg.perturbations[c % np], rows.data() + c * nd);
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(cells)));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return rows;
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << kCsvHeader << '\n';
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
  };
  for (const auto& r : rows) {
    os << r.seed << ',' << r.T << ',' << num(r.delta) << ',' << num(r.sigma) << ',' << num(r.mu) << ','
       << num(r.cost_blind) << ',' << num(r.cost_ftp) << ',' << num(r.cost_greedy) << ',' << num(r.cost_aos)
       << ',' << num(r.cost_opt) << ',' << num(r.eta) << ',' << num(r.alpha_emp) << ','
       << num(r.bound_consistency) << ',' << num(r.bound_robustness) << '\n';
  }
}

std::vector<std::string> row_violations(const SweepRow& r) {
  std::vector<std::string> out;
  if (!r.error.empty()) {
    out.push_back("episode failed: " + r.error);
    return out;
  }
  if (!leq_tol(r.cost_aos, (1.0 + 2.0 * r.delta) * r.cost_ftp)) out.push_back("aos <= (1+2delta) ftp");
  if (!leq_tol(r.cost_ftp, r.cost_blind)) out.push_back("ftp <= blind");
  if (std::isfinite(r.eta) && !leq_tol(r.cost_ftp, (1.0 + 2.0 * r.eta) * r.cost_opt)) {
    out.push_back("ftp <= (1+2eta) opt");
  }
  if (!leq_tol(r.cost_aos, r.robustness_multiplier * r.cost_greedy)) out.push_back("aos <= multiplier greedy");
  return out;
}

}  // namespace soco::microgrid
