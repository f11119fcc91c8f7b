#include <benchmark/benchmark.h>

#include "rictube/assembly.hpp"
#include "rictube/curvature.hpp"
#include "rictube/oracle.hpp"

namespace {

using namespace rictube;

void BM_ProfileEval(benchmark::State& state) {
  const assembly::TubeDesign td = assembly::design_tube(TubeParams{});
  double r = td.h.lo() + 1e-3;
  const double hi = td.h.hi();
  for (auto _ : state) {
    benchmark::DoNotOptimize(td.h.eval(r));
    r += 1e-4;
    if (r > hi) r = td.h.lo() + 1e-3;
  }
}
BENCHMARK(BM_ProfileEval);

void BM_RicciGridScan(benchmark::State& state) {
  const assembly::TubeDesign td = assembly::design_tube(TubeParams{});
  const std::vector<double> grid = check_grid2(td.f, td.h, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    double acc = 0.0;
    for (double r : grid) {
      const DoublyWarpedRicci ric = ricci_doubly_warped(td.f.eval(r), td.h.eval(r), td.params);
      acc += ric.radial + ric.horizontal + ric.fiber;
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_RicciGridScan)->Arg(2048);

void BM_QuotientGridScan(benchmark::State& state) {
  const assembly::TubeDesign td = assembly::design_tube(TubeParams{});
  const std::vector<double> grid = check_grid2(td.f, td.h, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    double acc = 0.0;
    for (double r : grid) {
      acc += quotient_quantities(td.f.eval(r), td.h.eval(r), td.params).ineq521_margin;
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_QuotientGridScan)->Arg(2048);

void BM_OracleRicciSample(benchmark::State& state) {
  const oracle::ChartMetric chart = oracle::chart_round_s4();
  const std::vector<double> x{1.0, 0.7, 1.3, 2.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::ricci_sample(chart, x, 1e-5, 0));
  }
}
BENCHMARK(BM_OracleRicciSample);

void BM_DesignTube(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(assembly::design_tube(TubeParams{}));
  }
}
BENCHMARK(BM_DesignTube);

}  // namespace

BENCHMARK_MAIN();
