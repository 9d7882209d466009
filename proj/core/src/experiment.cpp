#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <thread>

#include "scenuc/rng.hpp"
#include "scenuc/stochastic.hpp"

namespace scenuc {

namespace {

// Seed-space separation between scenario sampling and out-of-sample draws.
constexpr uint64_t kSampleKey = 0x5343454e00000001ull;
constexpr uint64_t kOosKey = 0x5343454e00000002ull;

void parallel_for(long count, int threads, const std::function<void(long, long)>& chunk_fn) {
  if (threads <= 1 || count < 2) {
    chunk_fn(0, count);
    return;
  }
  const int nthreads = std::min<long>(threads, count);
  std::vector<std::thread> pool;
  const long per = (count + nthreads - 1) / nthreads;
  for (int w = 0; w < nthreads; ++w) {
    const long lo = w * per, hi = std::min(count, lo + per);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] { chunk_fn(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

OutOfSampleReport estimate_violation(const GridCase& grid, const UcSolution& solution,
                                     const DistributionSpec& spec, long m, uint64_t seed,
                                     int threads) {
  if (m < 1) throw DomainError("estimate_violation: m must be >= 1");
  spec.validate(grid);
  const ViolationEvaluator eval(grid, solution);

  std::atomic<long> violations{0}, balance{0}, line{0};
  parallel_for(m, threads, [&](long lo, long hi) {
    long v = 0, b = 0, l = 0;
    for (long i = lo; i < hi; ++i) {
      const ScenarioRealization draw =
          sample_one(spec, grid, derive_stream(seed, kOosKey, static_cast<uint64_t>(i)),
                     static_cast<int>(i));
      const ViolationReport rep = eval.check(draw);
      if (rep.violated) ++v;
      if (rep.balance_violated) ++b;
      if (rep.line_violated) ++l;
    }
    violations += v;
    balance += b;
    line += l;
  });

  OutOfSampleReport rep;
  rep.m_samples = m;
  rep.violation_count = violations.load();
  rep.balance_violations = balance.load();
  rep.line_violations = line.load();
  rep.epsilon_hat = static_cast<double>(rep.violation_count) / static_cast<double>(m);
  rep.half_width =
      1.96 * std::sqrt(rep.epsilon_hat * (1.0 - rep.epsilon_hat) / static_cast<double>(m));
  return rep;
}

namespace {

TrialRow run_trial(const ExperimentConfig& cfg, int n, int trial) {
  TrialRow row;
  row.n = n;
  row.trial = trial;
  row.sample_seed = derive_stream(cfg.master_seed, kSampleKey, static_cast<uint64_t>(n),
                                  static_cast<uint64_t>(trial));
  row.oos_seed = derive_stream(cfg.master_seed, kOosKey, static_cast<uint64_t>(n),
                               static_cast<uint64_t>(trial));
  const auto t0 = std::chrono::steady_clock::now();
  try {
    ScenarioSet scenarios = sample_scenarios(cfg.spec, cfg.grid, n, row.sample_seed);
    ScucScenarioProblem problem(cfg.grid, std::move(scenarios), cfg.milp, cfg.equality);

    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    OracleSolveResult full = problem.solve_subset(all, nullptr);
    if (full.status == MilpStatus::Infeasible) throw InfeasibleBase("SP(N) infeasible");

    ReductionResult red = two_stage_essential(problem, cfg.milp.lp_tol);
    row.objective = full.objective;
    row.kind = red.kind;
    row.set_size = static_cast<int>(red.indices.size());
    row.degenerate = red.degenerate;
    row.solve_count = red.solve_count + 1;
    row.epsilon_posterior = epsilon_posterior(n, row.set_size, cfg.beta);

    UcSolution sol = problem.extract(full);
    row.oos = estimate_violation(cfg.grid, sol, cfg.spec, cfg.m_oos, row.oos_seed, 1);
    row.ok = true;
  } catch (const Error& e) {
    row.ok = false;
    row.error = e.what();
  }
  row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
  return row;
}

NAggregate aggregate(int n, const std::vector<TrialRow>& rows) {
  NAggregate agg;
  agg.n = n;
  bool first = true;
  int decided = 0, degenerate = 0;
  for (const TrialRow& r : rows) {
    if (r.n != n || !r.ok) continue;
    ++agg.ok_trials;
    if (first) {
      agg.obj_min = agg.obj_max = r.objective;
      agg.eps_hat_min = agg.eps_hat_max = r.oos.epsilon_hat;
      agg.eps_post_min = agg.eps_post_max = r.epsilon_posterior;
      agg.set_size_min = agg.set_size_max = r.set_size;
      first = false;
    }
    agg.obj_min = std::min(agg.obj_min, r.objective);
    agg.obj_max = std::max(agg.obj_max, r.objective);
    agg.obj_mean += r.objective;
    agg.eps_hat_min = std::min(agg.eps_hat_min, r.oos.epsilon_hat);
    agg.eps_hat_max = std::max(agg.eps_hat_max, r.oos.epsilon_hat);
    agg.eps_hat_mean += r.oos.epsilon_hat;
    agg.eps_post_min = std::min(agg.eps_post_min, r.epsilon_posterior);
    agg.eps_post_max = std::max(agg.eps_post_max, r.epsilon_posterior);
    agg.eps_post_mean += r.epsilon_posterior;
    agg.set_size_min = std::min(agg.set_size_min, r.set_size);
    agg.set_size_max = std::max(agg.set_size_max, r.set_size);
    agg.set_size_mean += r.set_size;
    agg.solve_count_mean += static_cast<double>(r.solve_count);
    agg.wall_ms_mean += r.wall_ms;
    if (r.degenerate != Degeneracy::Unknown) {
      ++decided;
      if (r.degenerate == Degeneracy::Degenerate) ++degenerate;
    }
  }
  if (agg.ok_trials > 0) {
    const double c = agg.ok_trials;
    agg.obj_mean /= c;
    agg.eps_hat_mean /= c;
    agg.eps_post_mean /= c;
    agg.set_size_mean /= c;
    agg.solve_count_mean /= c;
    agg.wall_ms_mean /= c;
  }
  agg.degenerate_rate = decided > 0 ? static_cast<double>(degenerate) / decided : 0.0;
  return agg;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw DomainError("trials must be >= 1");
  // N = 0 stays in the grid: the trial itself fails at certification
  // (no posterior exists) and is recorded as an invalid row.
  for (int n : cfg.n_grid)
    if (n < 0) throw DomainError("scenario counts must be >= 0");
  cfg.grid.validate();
  cfg.spec.validate(cfg.grid);

  struct Task {
    int n, trial;
  };
  std::vector<Task> tasks;
  for (int n : cfg.n_grid)
    for (int t = 1; t <= cfg.trials; ++t) tasks.push_back({n, t});

  std::vector<TrialRow> rows(tasks.size());
  parallel_for(static_cast<long>(tasks.size()), cfg.threads, [&](long lo, long hi) {
    for (long i = lo; i < hi; ++i) rows[i] = run_trial(cfg, tasks[i].n, tasks[i].trial);
  });
  std::sort(rows.begin(), rows.end(), [](const TrialRow& a, const TrialRow& b) {
    if (a.n != b.n) return a.n < b.n;
    return a.trial < b.trial;
  });

  ExperimentReport rep;
  rep.beta = cfg.beta;
  rep.m_oos = cfg.m_oos;
  rep.master_seed = cfg.master_seed;
  rep.case_name = cfg.case_name;
  rep.rows = std::move(rows);
  for (int n : cfg.n_grid) rep.per_n.push_back(aggregate(n, rep.rows));
  return rep;
}

}  // namespace scenuc
