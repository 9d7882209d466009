#include <benchmark/benchmark.h>

#include <numeric>

#include "scenuc/cases.hpp"
#include "scenuc/rng.hpp"
#include "scenuc/stochastic.hpp"

using namespace scenuc;

namespace {

void BM_sample_scenarios(benchmark::State& state) {
  CaseFile c6 = builtin_case6();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_scenarios(default_distribution(), c6.grid, n, 3));
}
BENCHMARK(BM_sample_scenarios)->Arg(100)->Arg(1000);

void BM_violation_check(benchmark::State& state) {
  CaseFile c6 = builtin_case6();
  ScenarioSet set = sample_scenarios(*c6.distribution, c6.grid, 5, 3);
  ScucScenarioProblem problem(c6.grid, set);
  std::vector<int> all(5);
  std::iota(all.begin(), all.end(), 0);
  UcSolution sol = problem.extract(problem.solve_subset(all, nullptr));
  ViolationEvaluator eval(c6.grid, sol);
  SplitMix64 seed(1);
  ScenarioRealization draw = sample_one(*c6.distribution, c6.grid, seed.next());
  for (auto _ : state) benchmark::DoNotOptimize(eval.check(draw));
}
BENCHMARK(BM_violation_check);

void BM_estimate_violation(benchmark::State& state) {
  CaseFile c3 = builtin_case3();
  ScenarioSet set = sample_scenarios(default_distribution(), c3.grid, 10, 3);
  ScucScenarioProblem problem(c3.grid, set);
  std::vector<int> all(10);
  std::iota(all.begin(), all.end(), 0);
  UcSolution sol = problem.extract(problem.solve_subset(all, nullptr));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        estimate_violation(c3.grid, sol, default_distribution(), state.range(0), 5, 1));
}
BENCHMARK(BM_estimate_violation)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
