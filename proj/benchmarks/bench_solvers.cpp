#include <benchmark/benchmark.h>

#include <numeric>

#include "scenuc/cases.hpp"
#include "scenuc/random_problems.hpp"
#include "scenuc/scuc.hpp"

using namespace scenuc;

namespace {

// Scenario-style LP: a handful of dispatch variables against a growing pile
// of mostly-slack rows, the shape the lazy solver is built for.
LinearProgram scenario_style_lp(int n_rows) {
  SplitMix64 rng(42);
  LinearProgram lp;
  for (int j = 0; j < 6; ++j) lp.add_variable(0.0, 100.0, 1.0 + j);
  for (int r = 0; r < n_rows; ++r) {
    std::vector<int> idx{r % 6, (r + 1) % 6};
    std::vector<double> coef{1.0, 1.0};
    lp.add_row(idx, coef, RowSense::GE, 20.0 + 40.0 * rng.uniform_open(), "row");
  }
  return lp;
}

void BM_solve_lp_plain(benchmark::State& state) {
  LinearProgram lp = scenario_style_lp(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp(lp));
}
BENCHMARK(BM_solve_lp_plain)->Arg(64)->Arg(256)->Arg(1024);

void BM_solve_lp_lazy(benchmark::State& state) {
  LinearProgram lp = scenario_style_lp(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp_lazy(lp));
}
BENCHMARK(BM_solve_lp_lazy)->Arg(64)->Arg(256)->Arg(1024)->Arg(4096);

void BM_sscuc_full_solve(benchmark::State& state) {
  CaseFile c3 = builtin_case3();
  const int n = static_cast<int>(state.range(0));
  ScenarioSet set = sample_scenarios(default_distribution(), c3.grid, n, 7);
  ScucScenarioProblem problem(c3.grid, std::move(set));
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (auto _ : state) benchmark::DoNotOptimize(problem.solve_subset(all, nullptr));
}
BENCHMARK(BM_sscuc_full_solve)->Arg(20)->Arg(100)->Arg(500);

void BM_two_stage_reduction(benchmark::State& state) {
  CaseFile c3 = builtin_case3();
  const int n = static_cast<int>(state.range(0));
  ScenarioSet set = sample_scenarios(default_distribution(), c3.grid, n, 7);
  ScucScenarioProblem problem(c3.grid, std::move(set));
  for (auto _ : state) benchmark::DoNotOptimize(two_stage_essential(problem));
}
BENCHMARK(BM_two_stage_reduction)->Arg(20)->Arg(100);

}  // namespace
