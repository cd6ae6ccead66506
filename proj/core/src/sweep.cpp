#include "soco/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <limits>
#include <ostream>
#include <thread>

#include "soco/aos.hpp"
#include "soco/bounds.hpp"
#include "soco/offline.hpp"
#include "soco/selftest.hpp"

namespace soco {

namespace {

void run_instance(std::size_t i, std::uint64_t seed, const std::vector<double>& deltas, FiniteSweepRow* rows) {
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    rows[k].instance = i;
    rows[k].seed = seed;
    rows[k].delta = deltas[k];
  }
  try {
    const RandomFinite rf = random_finite(seed);
    const auto& inst = rf.instance;
    const double ftp = run_ftp(inst, rf.predictions).total;
    const double blind = run_blind(inst, rf.predictions).total;
    const double greedy = run_greedy(inst).total;
    const auto opt = opt_dp_finite(inst);
    const EtaAccuracy eta = eta_accuracy(inst, rf.predictions, opt);
    const bool ftp_ok = leq_tol(ftp, blind) && (eta.degenerate || leq_tol(ftp, (1.0 + 2.0 * eta.eta) * opt.total));
    for (std::size_t k = 0; k < deltas.size(); ++k) {
      FiniteSweepRow& r = rows[k];
      r.n = inst.space().size();
      r.T = inst.horizon();
      r.alpha = rf.alpha;
      r.prediction_mode = rf.prediction_mode;
      r.cost_aos = run_aos(inst, rf.predictions, r.delta).trajectory.total;
      r.cost_ftp = ftp;
      r.cost_blind = blind;
      r.cost_greedy = greedy;
      r.cost_opt = opt.total;
      r.eta = eta.eta;
      r.consistency_ok = leq_tol(r.cost_aos, (1.0 + 2.0 * r.delta) * ftp);
      const double a = admissible_alpha(rf.alpha, r.delta);
      r.robustness_checked = 2.0 - a - r.delta * (1.0 + a) > 0;
      r.robustness_ok = !r.robustness_checked || leq_tol(r.cost_aos, robustness_multiplier(a, r.delta) * greedy);
      r.ftp_ok = ftp_ok;
    }
  } catch (const Error& e) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t k = 0; k < deltas.size(); ++k) {
      FiniteSweepRow& r = rows[k];
      r.alpha = r.cost_aos = r.cost_ftp = r.cost_blind = r.cost_greedy = r.cost_opt = r.eta = nan;
      r.error = e.what();
    }
  }
}

}  // namespace

std::vector<FiniteSweepRow> run_finite_sweep(std::size_t count, std::uint64_t seed,
                                             const std::vector<double>& deltas, unsigned jobs) {
  if (deltas.empty()) throw ParameterError("need at least one delta");
  for (double d : deltas)
    if (!(d > 0)) throw ParameterError("every delta must be positive");
  const std::size_t nd = deltas.size();
  std::vector<FiniteSweepRow> rows(count * nd);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) run_instance(i, derive_seed(seed, i), deltas, rows.data() + i * nd);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < n; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return rows;
}

void write_csv(std::ostream& os, const std::vector<FiniteSweepRow>& rows) {
  os << kFiniteCsvHeader << '\n';
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
  };
  for (const auto& r : rows) {
    os << r.instance << ',' << r.seed << ',' << r.n << ',' << r.T << ',' << num(r.alpha) << ',' << num(r.delta) << ','
       << r.prediction_mode << ',' << num(r.cost_aos) << ',' << num(r.cost_ftp) << ',' << num(r.cost_blind) << ','
       << num(r.cost_greedy) << ',' << num(r.cost_opt) << ',' << num(r.eta) << ',' << r.consistency_ok << ','
       << r.robustness_ok << ',' << r.robustness_checked << ',' << r.ftp_ok << '\n';
  }
}

}  // namespace soco
