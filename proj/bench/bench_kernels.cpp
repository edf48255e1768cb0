// Serial reference against the OpenMP version of each data-parallel kernel.
// Run with OMP_NUM_THREADS (or --threads via the CLI) to vary the team size.

#include <benchmark/benchmark.h>

#include "discrimlab/bounds.hpp"
#include "discrimlab/search.hpp"

namespace {

using discrimlab::Exec;

Exec exec_of(const benchmark::State& st) { return st.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

void label(benchmark::State& st) { st.SetLabel(st.range(0) == 0 ? "serial" : "parallel"); }

void BM_SweepCurve(benchmark::State& st) {
  std::vector<double> grid(200001);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 0.5 * static_cast<double>(i) / (grid.size() - 1);
  for (auto _ : st) benchmark::DoNotOptimize(discrimlab::sweep_curve(grid, exec_of(st)));
  label(st);
}
BENCHMARK(BM_SweepCurve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SepOracle(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(discrimlab::brute_force_sep_oracle(0.3, 1000000, 1, exec_of(st)));
  label(st);
}
BENCHMARK(BM_SepOracle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_AveragedRate(benchmark::State& st) {
  const auto prior = discrimlab::Priors::FromEta0(0.4);
  for (auto _ : st) benchmark::DoNotOptimize(discrimlab::averaged_rate(discrimlab::u_bound, prior, 1e-6, exec_of(st)));
  label(st);
}
BENCHMARK(BM_AveragedRate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_OptimizeLocc(benchmark::State& st) {
  discrimlab::LoccSearchConfig cfg;
  cfg.gamma0_target = 0.25;
  cfg.rounds = 2;
  cfg.restarts = 16;
  cfg.max_evals = 1000;
  for (auto _ : st) benchmark::DoNotOptimize(discrimlab::optimize_locc(cfg, exec_of(st)).gammas);
  label(st);
}
BENCHMARK(BM_OptimizeLocc)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

BENCHMARK_MAIN();
