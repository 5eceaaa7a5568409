#include <benchmark/benchmark.h>

#include "rogonlab/residual.hpp"
#include "rogonlab/rogon.hpp"

namespace {

const rogonlab::RogonParams kParams{1.5, 1.0, 2.0, 5.0, 0.0};

void BM_EvalRogon1(benchmark::State& state) {
  double S = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rogonlab::eval_rogon1(kParams, {S, 0.3}));
    S += 1e-9;
  }
}
BENCHMARK(BM_EvalRogon1);

void BM_EvalRogon2(benchmark::State& state) {
  double S = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rogonlab::eval_rogon2(kParams, {S, 0.3}));
    S += 1e-9;
  }
}
BENCHMARK(BM_EvalRogon2);

void BM_EvalGrid(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto g = rogonlab::eval_grid(kParams, rogonlab::RogonOrder::Two, {-4, 4}, {-2, 2}, n, n / 2);
    benchmark::DoNotOptimize(g.fields.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * (n / 2)));
}
BENCHMARK(BM_EvalGrid)->RangeMultiplier(2)->Range(64, 512);

void BM_ResidualAt(benchmark::State& state) {
  const auto field = rogonlab::rogon_field(rogonlab::RogonOrder::Two);
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rogonlab::residual_at(field, kParams, {0.5, 0.3}, 5e-3, order));
  }
}
BENCHMARK(BM_ResidualAt)->DenseRange(2, 8, 2);

}  // namespace
