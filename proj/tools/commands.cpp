#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "config.hpp"
#include "soco/adversarial.hpp"
#include "soco/aobd.hpp"
#include "soco/aos.hpp"
#include "soco/io.hpp"
#include "soco/microgrid.hpp"
#include "soco/offline.hpp"
#include "soco/selftest.hpp"
#include "soco/sweep.hpp"

namespace soco::cli {

namespace {

/// Writes the buffered result to --out (when given) or to the stream.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write output file '" + path + "'");
  f << text;
}

// ---------------------------------------------------------------------------
// run

struct RunOptions {
  std::string instance;
  std::string generate;
  std::uint64_t seed = 1;
  std::string algo = "aos";
  double delta = 0.5;
  std::optional<double> beta_lo;
  std::optional<double> beta_hi;
  double grid_h = 1.0 / 256.0;
  std::string advice = "file";
  std::string out;
};

template <DecisionSpace S>
PredictionSeq<typename S::point_type> choose_advice(const Episode<S>& ep, const RunOptions& o) {
  const auto& inst = ep.instance;
  if (o.advice == "file") {
    if (!ep.predictions) throw ConfigError("the instance has no predictions; pass --advice opt or --advice minimizers");
    return *ep.predictions;
  }
  if (o.advice == "minimizers") {
    PredictionSeq<typename S::point_type> p;
    for (std::size_t t = 1; t <= inst.horizon(); ++t) p.push_back(inst.minimizer(t));
    return p;
  }
  if constexpr (std::is_same_v<S, DiscreteSpace>) {
    return opt_dp_finite(inst).decisions;
  } else if constexpr (std::is_same_v<S, RealLine>) {
    return opt_dp_grid(inst, default_grid(inst, o.grid_h)).trajectory.decisions;
  } else {
    throw ConfigError("--advice opt needs an offline solver, which the plane does not have");
  }
}

int cmd_run(const RunOptions& o, std::ostream& out) {
  if (o.instance.empty() == o.generate.empty()) throw ConfigError("run needs exactly one of --instance and --generate");
  EpisodeConfig cfg;
  cfg.algorithm = parse_algorithm(o.algo);
  cfg.delta = o.delta;
  cfg.beta_lo = o.beta_lo;
  cfg.beta_hi = o.beta_hi;
  cfg.grid_h = o.grid_h;

  AnyEpisode ep = [&]() -> AnyEpisode {
    if (!o.instance.empty()) return load_episode(o.instance);
    if (o.generate == "finite") {
      RandomFinite rf = random_finite(o.seed);
      return Episode<DiscreteSpace>{std::move(rf.instance), std::move(rf.predictions)};
    }
    RandomConvexLine rl = random_convex_line(o.seed);
    return Episode<RealLine>{std::move(rl.instance), std::move(rl.predictions)};
  }();

  json report = std::visit(
      [&](const auto& e) {
        const auto preds = choose_advice(e, o);
        return to_json(run_episode(e.instance, preds, cfg));
      },
      ep);
  report["source"] = o.instance.empty() ? json{{"generator", o.generate}, {"seed", o.seed}} : json{{"file", o.instance}};
  report["advice"] = o.advice;
  emit(report.dump(2) + "\n", o.out, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOptions {
  std::size_t count = 500;
  std::uint64_t seed = 1;
  std::vector<double> deltas{0.1, 0.5, 1.0};
  unsigned jobs = 1;
  std::string out;
};

int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
  const auto rows = run_finite_sweep(o.count, o.seed, o.deltas, o.jobs);
  std::ostringstream os;
  write_csv(os, rows);
  emit(os.str(), o.out, out);
  const auto bad = std::count_if(rows.begin(), rows.end(), [](const FiniteSweepRow& r) {
    return !r.error.empty() || !r.consistency_ok || !r.robustness_ok || !r.ftp_ok;
  });
  err << rows.size() << " rows, " << bad << " with a failed check\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsOptions {
  double alpha = 0.5;
  double delta = 0.5;
  int t_min = 1;
  int t_max = 8;
  double eta = 0.0;
  std::optional<double> beta_lo;
  std::optional<double> beta_hi;
  std::string out;
};

int cmd_bounds(const BoundsOptions& o, std::ostream& out) {
  if (!(o.alpha > 0) || !(o.delta > 0)) throw ParameterError("--alpha and --delta must be positive");
  if (o.t_min < 1 || o.t_max > kMaxCertificateT || o.t_min > o.t_max) {
    throw ParameterError("t range must satisfy 1 <= t-min <= t-max <= " + std::to_string(kMaxCertificateT));
  }
  if (!(o.eta >= 0)) throw ParameterError("--eta must be non-negative");
  json j;
  j["alpha"] = o.alpha;
  j["delta"] = o.delta;
  try {
    j["tilde_U"] = number(tilde_U(o.alpha, o.delta));
  } catch (const ParameterError& e) {
    j["tilde_U"] = nullptr;
    j["tilde_U_skipped"] = e.what();
  }
  const double th = lower_bound_horizon(o.alpha, o.delta);
  j["lower_bound_horizon"] = th;
  json dual = json::array(), primal = json::array(), closed = json::array();
  for (int t = o.t_min; t <= o.t_max; ++t) {
    dual.push_back(to_json(solve_U(t, o.alpha, o.delta)));
    primal.push_back(to_json(solve_L(t, o.alpha, o.delta)));
    if (std::fabs(th - t) <= 1e-9 * t) {
      json c = to_json(check_primal(t, o.alpha, o.delta, closed_form_Delta(t, o.alpha, o.delta)));
      c["closed_form_objective"] = number(closed_form_L_objective(t, o.alpha, o.delta));
      closed.push_back(std::move(c));
    }
  }
  j["dual"] = std::move(dual);
  j["primal"] = std::move(primal);
  j["closed_form_primal"] = std::move(closed);
  const AobdParams d = AobdParams::from_delta(o.delta);
  const BoundSet bs = applicable_bounds(o.alpha, o.delta, o.eta, o.beta_lo.value_or(d.beta_lo), o.beta_hi.value_or(d.beta_hi));
  json bounds = json::array();
  for (const auto& b : bs.reports) bounds.push_back(to_json(b));
  j["bounds"] = std::move(bounds);
  j["bounds_skipped"] = bs.skipped;
  emit(j.dump(2) + "\n", o.out, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// adversarial

struct AdversarialOptions {
  std::string game;
  std::vector<std::string> algos{"blind"};
  std::optional<double> alpha;
  std::optional<double> delta;
  double beta = 1.0;
  std::size_t rounds = 200;
  std::size_t horizon = 50;
  double penalty = 1e6;
  double algo_delta = 0.5;
  std::optional<double> beta_lo;
  std::optional<double> beta_hi;
  std::optional<double> grid_h;
  std::string out;
};

template <DecisionSpace S>
std::unique_ptr<OnlinePolicy<S>> make_policy(const std::string& name, const AdversarialOptions& o,
                                             std::optional<double> game_delta) {
  if (name == "blind") return std::make_unique<BlindPolicy<S>>();
  if (name == "greedy") return std::make_unique<GreedyPolicy<S>>();
  if (name == "ftp") return std::make_unique<FtpPolicy<S>>(S{});
  if (name == "aos") return std::make_unique<AosPolicy<S>>(S{}, o.algo_delta);
  if (name == "aobd") {
    if constexpr (std::is_same_v<S, RealLine>) {
      AobdParams p = AobdParams::from_delta(game_delta.value_or(o.algo_delta));
      if (o.beta_lo) p.beta_lo = *o.beta_lo;
      if (o.beta_hi) p.beta_hi = *o.beta_hi;
      return std::make_unique<AobdPolicy>(p);
    } else {
      throw ConfigError("aobd only plays games on the real line (one-dim, bregman)");
    }
  }
  throw ConfigError("unknown algorithm '" + name + "'");
}

GameTranscript play(const AdversarialOptions& o, const std::string& algo) {
  if (o.game == "lower-bound") {
    const LowerBoundInstance lb = gen_lower_bound_instance(o.alpha.value_or(0.5), o.delta.value_or(0.5));
    if (algo == "aobd") throw ConfigError("aobd only plays games on the real line (one-dim, bregman)");
    std::unique_ptr<OnlinePolicy<DiscreteSpace>> p;
    if (algo == "ftp") {
      p = std::make_unique<FtpPolicy<DiscreteSpace>>(lb.instance.space());
    } else if (algo == "aos") {
      p = std::make_unique<AosPolicy<DiscreteSpace>>(lb.instance.space(), o.algo_delta);
    } else if (algo == "blind") {
      p = std::make_unique<BlindPolicy<DiscreteSpace>>();
    } else if (algo == "greedy") {
      p = std::make_unique<GreedyPolicy<DiscreteSpace>>();
    } else {
      throw ConfigError("unknown algorithm '" + algo + "'");
    }
    return play_lower_bound_instance(lb, *p);
  }
  if (o.game == "memoryless") {
    auto p = make_policy<Plane>(algo, o, std::nullopt);
    return play_memoryless_game(*p, o.alpha.value_or(0.01), o.rounds, o.penalty).transcript;
  }
  if (o.game == "one-dim") {
    const double delta = o.delta.value_or(0.25);
    auto p = make_policy<RealLine>(algo, o, delta);
    return play_one_dim_game(*p, delta, o.grid_h.value_or(1.0 / 1024.0)).transcript;
  }
  // bregman
  auto p = make_policy<RealLine>(algo, o, o.delta);
  return play_bregman_game(*p, o.alpha.value_or(1.0), o.beta, o.delta.value_or(1.0), o.horizon,
                           o.grid_h.value_or(1.0 / 128.0))
      .transcript;
}

int cmd_adversarial(const AdversarialOptions& o, std::ostream& out) {
  std::string text;
  for (const std::string& a : o.algos) text += to_json(play(o, a)).dump() + "\n";
  emit(text, o.out, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// microgrid

struct MicrogridOptions {
  std::uint64_t seed = 1;
  std::size_t num_seeds = 5;
  std::size_t horizon = 96;
  std::size_t window = 10;
  std::vector<double> deltas{0.01, 0.1};
  std::vector<double> sigmas{0.0, 0.5, 2.0};
  std::vector<double> mus;
  unsigned jobs = 1;
  std::string out;
};

int cmd_microgrid(const MicrogridOptions& o, std::ostream& out, std::ostream& err) {
  using namespace microgrid;
  if (o.num_seeds < 1) throw ConfigError("--num-seeds must be at least 1");
  SweepConfig cfg;
  cfg.seeds.clear();
  for (std::size_t i = 0; i < o.num_seeds; ++i) cfg.seeds.push_back(o.seed + i);
  cfg.T = o.horizon;
  cfg.window = o.window;
  cfg.deltas = o.deltas;
  cfg.perturbations.clear();
  for (double s : o.sigmas) cfg.perturbations.push_back({PerturbMode::gaussian, s});
  for (double m : o.mus) cfg.perturbations.push_back({PerturbMode::bias, m});
  if (cfg.perturbations.empty()) throw ConfigError("give at least one --sigmas or --mus value");
  cfg.jobs = o.jobs;
  const auto rows = run_sweep(cfg);
  std::ostringstream os;
  write_csv(os, rows);
  emit(os.str(), o.out, out);
  std::size_t bad = 0;
  for (const auto& r : rows) bad += row_violations(r).empty() ? 0 : 1;
  err << rows.size() << " rows, " << bad << " with a failed check\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// selftest

struct SelftestCliOptions {
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string out;
};

int cmd_selftest(const SelftestCliOptions& o, std::ostream& out) {
  SelftestOptions so;
  so.seed = o.seed;
  so.jobs = o.jobs;
  bool ok = true;
  std::string text;
  for (const SuiteResult& r : run_selftest(so)) {
    ok = ok && r.pass;
    text += format_result(r) + "\n";
  }
  emit(text, o.out, out);
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Online optimization with switching costs and untrusted predictions", "advice-soco"};
  app.set_version_flag("--version", "advice-soco 0.1.0");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  // --config is consumed by merge_config; listed here for --help.
  std::string config_placeholder;
  app.add_option("--config", config_placeholder,
                 "JSON file of option values (keys are long option names; flags take precedence)");

  unsigned jobs_default = 1;
  try {
    jobs_default = default_jobs();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  RunOptions ro;
  auto* run_cmd = app.add_subcommand("run", "Run one episode and print its report as JSON");
  auto* inst_opt = run_cmd->add_option("--instance", ro.instance, "Instance JSON file")->check(CLI::ExistingFile);
  run_cmd->add_option("--generate", ro.generate, "Random instance generator")
      ->check(CLI::IsMember({"finite", "convex1d"}))
      ->excludes(inst_opt);
  run_cmd->add_option("--seed", ro.seed, "Seed of the generator")->capture_default_str();
  run_cmd->add_option("--algo", ro.algo, "Algorithm")
      ->check(CLI::IsMember({"aos", "ftp", "aobd", "greedy", "blind"}))
      ->capture_default_str();
  run_cmd->add_option("--delta", ro.delta, "AOS trade-off parameter (also sets the AOBD defaults)")
      ->capture_default_str();
  run_cmd->add_option("--beta-lo", ro.beta_lo, "AOBD lower step bound");
  run_cmd->add_option("--beta-hi", ro.beta_hi, "AOBD upper step bound");
  run_cmd->add_option("--grid-h", ro.grid_h, "Grid spacing of the 1-D offline optimum")->capture_default_str();
  run_cmd->add_option("--advice", ro.advice, "Advice source: predictions from the file, the offline optimum or the minimizers")
      ->check(CLI::IsMember({"file", "opt", "minimizers"}))
      ->capture_default_str();
  run_cmd->add_option("--out", ro.out, "Output file (default stdout)");

  SweepOptions so;
  so.jobs = jobs_default;
  auto* sweep_cmd = app.add_subcommand("sweep", "Random finite-instance sweep of AOS, FtP and the baselines (CSV)");
  sweep_cmd->add_option("--count", so.count, "Number of instances")->capture_default_str();
  sweep_cmd->add_option("--seed", so.seed, "Base seed")->capture_default_str();
  sweep_cmd->add_option("--deltas", so.deltas, "AOS trade-off parameters")->delimiter(',')->capture_default_str();
  sweep_cmd->add_option("--jobs", so.jobs, "Worker threads (default ADVICE_SOCO_JOBS or 1)")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--out", so.out, "Output CSV (default stdout)");

  BoundsOptions bo;
  auto* bounds_cmd = app.add_subcommand("bounds", "LP certificates and closed-form bounds (JSON)");
  bounds_cmd->add_option("--alpha", bo.alpha, "Polyhedral constant")->capture_default_str();
  bounds_cmd->add_option("--delta", bo.delta, "Trade-off parameter")->capture_default_str();
  bounds_cmd->add_option("--t-min", bo.t_min, "Smallest horizon")->capture_default_str();
  bounds_cmd->add_option("--t-max", bo.t_max, "Largest horizon")->capture_default_str();
  bounds_cmd->add_option("--eta", bo.eta, "Prediction accuracy for the consistency bounds")->capture_default_str();
  bounds_cmd->add_option("--beta-lo", bo.beta_lo, "AOBD lower step bound (default from delta)");
  bounds_cmd->add_option("--beta-hi", bo.beta_hi, "AOBD upper step bound (default from delta)");
  bounds_cmd->add_option("--out", bo.out, "Output file (default stdout)");

  AdversarialOptions ao;
  auto* adv_cmd = app.add_subcommand("adversarial", "Play an adversarial game and print transcripts (JSON lines)");
  adv_cmd->add_option("game", ao.game, "Game")
      ->required()
      ->check(CLI::IsMember({"lower-bound", "memoryless", "one-dim", "bregman"}));
  adv_cmd->add_option("--algo", ao.algos, "Algorithms, one transcript each")
      ->delimiter(',')
      ->check(CLI::IsMember({"aos", "ftp", "aobd", "greedy", "blind"}))
      ->capture_default_str();
  adv_cmd->add_option("--alpha", ao.alpha, "Game alpha (lower-bound 0.5, memoryless 0.01, bregman 1)");
  adv_cmd->add_option("--delta", ao.delta, "Game delta (lower-bound 0.5, one-dim 0.25, bregman 1)");
  adv_cmd->add_option("--beta", ao.beta, "Final-round curvature of the bregman game")->capture_default_str();
  adv_cmd->add_option("--rounds", ao.rounds, "Rounds of the memoryless game")->capture_default_str();
  adv_cmd->add_option("--T", ao.horizon, "Horizon of the bregman game")->capture_default_str();
  adv_cmd->add_option("--penalty", ao.penalty, "Off-axis penalty of the memoryless game")->capture_default_str();
  adv_cmd->add_option("--algo-delta", ao.algo_delta, "AOS trade-off parameter")->capture_default_str();
  adv_cmd->add_option("--beta-lo", ao.beta_lo, "AOBD lower step bound");
  adv_cmd->add_option("--beta-hi", ao.beta_hi, "AOBD upper step bound");
  adv_cmd->add_option("--grid-h", ao.grid_h, "Grid spacing of the offline optimum");
  adv_cmd->add_option("--out", ao.out, "Output file (default stdout)");

  MicrogridOptions mo;
  mo.jobs = jobs_default;
  auto* mg_cmd = app.add_subcommand("microgrid", "Synthetic unit-commitment sweep (CSV)");
  mg_cmd->add_option("--seed", mo.seed, "First trace seed")->capture_default_str();
  mg_cmd->add_option("--num-seeds", mo.num_seeds, "Number of consecutive seeds")->capture_default_str();
  mg_cmd->add_option("--T", mo.horizon, "Rounds per trace")->capture_default_str();
  mg_cmd->add_option("--window", mo.window, "Predictor lookahead")->capture_default_str();
  mg_cmd->add_option("--deltas", mo.deltas, "AOS trade-off parameters")->delimiter(',')->capture_default_str();
  mg_cmd->add_option("--sigmas", mo.sigmas, "Gaussian forecast noise levels")->delimiter(',')->capture_default_str();
  mg_cmd->add_option("--mus", mo.mus, "Forecast biases")->delimiter(',');
  mg_cmd->add_option("--jobs", mo.jobs, "Worker threads (default ADVICE_SOCO_JOBS or 1)")->check(CLI::PositiveNumber);
  mg_cmd->add_option("--out", mo.out, "Output CSV (default stdout)");

  SelftestCliOptions to;
  to.jobs = jobs_default;
  auto* st_cmd = app.add_subcommand("selftest", "Run the invariant suites (one PASS/FAIL line each)");
  st_cmd->add_option("--seed", to.seed, "Seed of the random suites")->capture_default_str();
  st_cmd->add_option("--jobs", to.jobs, "Worker threads (default ADVICE_SOCO_JOBS or 1)")->check(CLI::PositiveNumber);
  st_cmd->add_option("--out", to.out, "Output file (default stdout)");

  try {
    std::vector<std::string> args = merge_config(raw_args);
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(ro, out);
    if (sweep_cmd->parsed()) return cmd_sweep(so, out, err);
    if (bounds_cmd->parsed()) return cmd_bounds(bo, out);
    if (adv_cmd->parsed()) return cmd_adversarial(ao, out);
    if (mg_cmd->parsed()) return cmd_microgrid(mo, out, err);
    if (st_cmd->parsed()) return cmd_selftest(to, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SizeError& e) {
    err << "size error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidDecision& e) {
    err << "invalid decision: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ModelViolation& e) {
    err << "model violation: " << e.what() << "\n";
    return kExitModel;
  } catch (const InfeasibleRound& e) {
    err << "model violation: " << e.what() << "\n";
    return kExitModel;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace soco::cli
