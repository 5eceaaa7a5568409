#include <benchmark/benchmark.h>

#include "rogonlab/rogon.hpp"
#include "rogonlab/solver.hpp"

namespace {

using namespace rogonlab;

void BM_StrangStep(benchmark::State& state) {
  const Grid g = make_grid(100.0, static_cast<std::size_t>(state.range(0)));
  SolverConfig cfg;
  cfg.dt = 1e-3;
  SplitStepSolver solver(g, cfg);
  SimState s = init_from_analytic({1.0, 1.0, 1.0, 1.0, 0.0}, RogonOrder::One, g, -5.0);
  for (auto _ : state) {
    solver.step(s);
    benchmark::DoNotOptimize(s.sigma.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_StrangStep)->RangeMultiplier(2)->Range(256, 8192)->Complexity(benchmark::oNLogN);

void BM_Conserved(benchmark::State& state) {
  const Grid g = make_grid(100.0, static_cast<std::size_t>(state.range(0)));
  SplitStepSolver solver(g, SolverConfig{});
  const SimState s = init_from_analytic({1.0, 1.0, 1.0, 1.0, 0.0}, RogonOrder::One, g, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(solver.conserved(s));
}
BENCHMARK(BM_Conserved)->Arg(2048);

}  // namespace

BENCHMARK_MAIN();
