// Serial reference against the OpenMP kernels on the property sweeps.

#include <benchmark/benchmark.h>

#include "dtl/harness.hpp"
#include "dtl/parse.hpp"

using namespace dtl;

namespace {

Execution mode(const benchmark::State& st) { return st.range(0) == 0 ? Execution::Serial : Execution::Parallel; }

void BM_TangleSweep(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(tangle_sweep(4, 3, mode(st)).checked);
}
BENCHMARK(BM_TangleSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SoundnessRandom(benchmark::State& st) {
  SoundnessOptions opt;
  opt.trials = 1000;
  for (auto _ : st) benchmark::DoNotOptimize(soundness_random(opt, mode(st)).checked);
}
BENCHMARK(BM_SoundnessRandom)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SimBiconditional(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(sim_biconditional({"p"}, 3, 4, mode(st)).checked);
}
BENCHMARK(BM_SimBiconditional)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_QuasimodelBridge(benchmark::State& st) {
  const std::vector<Formula> pool{parse("F p & ~p"), parse("G <>p"), parse("<>{p, X ~p}")};
  for (auto _ : st) benchmark::DoNotOptimize(quasimodel_bridge(pool, 3, mode(st)).checked);
}
BENCHMARK(BM_QuasimodelBridge)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
