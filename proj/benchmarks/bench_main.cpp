#include <benchmark/benchmark.h>

#include "soco/aos.hpp"
#include "soco/bounds.hpp"
#include "soco/microgrid.hpp"
#include "soco/offline.hpp"
#include "soco/selftest.hpp"
#include "soco/sweep.hpp"

namespace {

soco::Instance<soco::DiscreteSpace> cloud_instance(std::size_t n, std::size_t T) {
  std::vector<double> coords(n);
  for (std::size_t i = 0; i < n; ++i) coords[i] = static_cast<double>(i) + 0.1 * static_cast<double>(i * i % 7);
  std::vector<soco::TableCost> costs;
  for (std::size_t t = 0; t < T; ++t) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>((i * 31 + t * 17) % 53);
    costs.emplace_back(std::move(v));
  }
  return {soco::DiscreteSpace::on_line(std::move(coords)), 0, std::move(costs)};
}

void BM_DpMatrix(benchmark::State& state) {
  const auto inst = cloud_instance(static_cast<std::size_t>(state.range(0)), 100);
  for (auto _ : state) benchmark::DoNotOptimize(soco::opt_dp_finite(inst).total);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DpMatrix)->RangeMultiplier(2)->Range(16, 512)->Complexity(benchmark::oNSquared);

void BM_DpCube(benchmark::State& state) {
  const int bits = static_cast<int>(state.range(0));
  const std::size_t n = std::size_t{1} << bits;
  std::vector<soco::TableCost> costs;
  for (std::size_t t = 0; t < 100; ++t) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>((i * 13 + t * 7) % 41);
    costs.emplace_back(std::move(v));
  }
  const soco::Instance<soco::DiscreteSpace> inst(soco::DiscreteSpace::binary_cube(bits, 2.0), 0, std::move(costs));
  for (auto _ : state) benchmark::DoNotOptimize(soco::opt_dp_finite(inst).total);
}
BENCHMARK(BM_DpCube)->DenseRange(4, 12, 2);

void BM_Aos(benchmark::State& state) {
  const auto inst = cloud_instance(static_cast<std::size_t>(state.range(0)), 200);
  const soco::PredictionSeq<std::size_t> preds(inst.horizon(), inst.space().size() - 1);
  for (auto _ : state) benchmark::DoNotOptimize(soco::run_aos(inst, preds, 0.5).trajectory.total);
}
BENCHMARK(BM_Aos)->RangeMultiplier(4)->Range(16, 1024);

void BM_SolveU(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(soco::solve_U(t, 0.5, 0.5).U);
}
BENCHMARK(BM_SolveU)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SolveL(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(soco::solve_L(t, 0.25, 1.0).objective);
}
BENCHMARK(BM_SolveL)->Arg(4)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_GridDp(benchmark::State& state) {
  const auto rl = soco::random_convex_line(7);
  const double h = 1.0 / static_cast<double>(state.range(0));
  const auto grid = soco::default_grid(rl.instance, h);
  for (auto _ : state) benchmark::DoNotOptimize(soco::opt_dp_grid(rl.instance, grid).trajectory.total);
}
BENCHMARK(BM_GridDp)->RangeMultiplier(4)->Range(16, 1024);

void BM_FiniteSweep(benchmark::State& state) {
  const unsigned jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(soco::run_finite_sweep(50, 1, {0.1, 0.5, 1.0}, jobs).size());
}
BENCHMARK(BM_FiniteSweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_MicrogridSweep(benchmark::State& state) {
  soco::microgrid::SweepConfig cfg;
  cfg.jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(soco::microgrid::run_sweep(cfg).size());
}
BENCHMARK(BM_MicrogridSweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
