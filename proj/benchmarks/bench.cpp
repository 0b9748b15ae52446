#include <benchmark/benchmark.h>

#include "cmi/expr.hpp"
#include "cmi/immersion.hpp"
#include "cmi/solver.hpp"

using namespace cmi;

namespace {

const CircularDomain kAnnulus({{Complex(0.0), 0.3}});

NullData catenoid() {
  return liftWeierstrass({parseRational("z"), parseRational("1/z")}, kAnnulus);
}

void BM_ContourIntegral(benchmark::State& state) {
  HomologyLoop loop{Complex(0.2, 0.0), 0.5, +1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(contourIntegral([](Complex z) { return 1.0 / z; }, loop));
  }
}
BENCHMARK(BM_ContourIntegral);

void BM_PeriodMap(benchmark::State& state) {
  NullData f = catenoid();
  auto loops = kAnnulus.loops();
  for (auto _ : state) {
    benchmark::DoNotOptimize(periodMap(f, loops).norm());
  }
}
BENCHMARK(BM_PeriodMap);

void BM_SolveMultiplier(benchmark::State& state) {
  NullData f = catenoid();
  PeriodTarget tgt;
  tgt.q = periodMap(f, kAnnulus.loops()).P;
  tgt.q(0, 2) *= 1.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solveMultiplier(f, tgt).residualNorm);
  }
}
BENCHMARK(BM_SolveMultiplier)->Unit(benchmark::kMillisecond);

void BM_IntegrateImmersion(benchmark::State& state) {
  NullData f = catenoid();
  DomainGrid grid = buildGrid(kAnnulus, static_cast<int>(state.range(0)), 0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        integrateImmersion(f, ComplexFn(), grid, Complex(0.65, 0.0)).closureResidual);
  }
}
BENCHMARK(BM_IntegrateImmersion)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
