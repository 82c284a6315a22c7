#include <benchmark/benchmark.h>

#include "spinorflow/flow_exact.hpp"
#include "spinorflow/flow_numeric.hpp"
#include "spinorflow/lorentz4d.hpp"

namespace {

using namespace spinorflow;

const CauchyPair kMixed{Sym3(-(0.375 + 0.8 * 0.5 / 0.6), 0.6, 0.8, 0.375, 0.5, 0.8 * 0.5 / 0.6)};
const CauchyPair kTau3{Sym3(1.0, 0, 0, 2.0, 0.5, 1.0)};

void BM_ExactTheta(benchmark::State& state) {
  ExactFlow flow(kMixed, LapseProfile::constant(1.0));
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(flow.theta(t));
    t = t > 1.5 ? 0.0 : t + 1e-3;
  }
}
BENCHMARK(BM_ExactTheta);

void BM_ExactFrame(benchmark::State& state) {
  ExactFlow flow(kTau3, LapseProfile::constant(1.0));
  for (auto _ : state) benchmark::DoNotOptimize(flow.frame(0.5));
}
BENCHMARK(BM_ExactFrame);

void BM_Rk4Integrate(benchmark::State& state) {
  StepOptions opts;
  opts.step = 1.0 / static_cast<double>(state.range(0));
  opts.record_stride = 1000000;
  for (auto _ : state) benchmark::DoNotOptimize(integrate(kMixed, LapseProfile::constant(1.0), 1.0, opts));
}
BENCHMARK(BM_Rk4Integrate)->Arg(1000)->Arg(10000);

void BM_Ricci4(benchmark::State& state) {
  for (auto _ : state) {
    const auto cf = coframe4_at(kTau3, LapseProfile::constant(1.0), 0.3);
    benchmark::DoNotOptimize(ricci4(cf));
  }
}
BENCHMARK(BM_Ricci4);

}  // namespace

BENCHMARK_MAIN();
