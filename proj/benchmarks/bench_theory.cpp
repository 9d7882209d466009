#include <benchmark/benchmark.h>

#include "scenuc/theory.hpp"

using namespace scenuc;

namespace {

void BM_epsilon_posterior(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    for (int k = 0; k <= n; k += 7) benchmark::DoNotOptimize(epsilon_posterior(n, k, 1e-3));
}
BENCHMARK(BM_epsilon_posterior)->Arg(100)->Arg(1000);

void BM_binomial_tail(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(binomial_tail(n, 10, 0.05));
}
BENCHMARK(BM_binomial_tail)->Arg(100)->Arg(2000);

void BM_sample_complexity(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_complexity_convex({0.05, 0.001, static_cast<int>(state.range(0))}));
}
BENCHMARK(BM_sample_complexity)->Arg(1)->Arg(10);

}  // namespace
