#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scenuc/scuc.hpp"
#include "scenuc/sets.hpp"
#include "scenuc/theory.hpp"

namespace scenuc {

struct OutOfSampleReport {
  long m_samples = 0;
  long violation_count = 0;
  double epsilon_hat = 0.0;
  long balance_violations = 0;  // realizations violating any balance row
  long line_violations = 0;     // realizations violating any line row
  /// 95% normal-approximation half width: 1.96 * sqrt(eh * (1 - eh) / m).
  double half_width = 0.0;
};

/// Unbiased out-of-sample estimate of the violation probability: m fresh
/// realizations (streams derived per index, so the result is independent of
/// evaluation order and thread count).
OutOfSampleReport estimate_violation(const GridCase& grid, const UcSolution& solution,
                                     const DistributionSpec& spec, long m, uint64_t seed,
                                     int threads = 1);

struct ExperimentConfig {
  std::string case_name;
  GridCase grid;
  DistributionSpec spec;
  std::vector<int> n_grid;
  int trials = 10;
  double beta = 0.01;
  long m_oos = 100000;
  uint64_t master_seed = 1;
  int threads = 1;
  MilpOptions milp;
  ObjectiveEquality equality;
};

struct TrialRow {
  int n = 0;
  int trial = 0;  // 1-based
  uint64_t sample_seed = 0;
  uint64_t oos_seed = 0;
  bool ok = false;
  std::string error;

  double objective = 0.0;
  ReductionKind kind = ReductionKind::Essential;
  int set_size = 0;
  Degeneracy degenerate = Degeneracy::Unknown;
  double epsilon_posterior = 1.0;
  OutOfSampleReport oos;
  long solve_count = 0;
  double wall_ms = 0.0;  // informational; never part of the deterministic CSV
};

struct NAggregate {
  int n = 0;
  int ok_trials = 0;
  double obj_min = 0.0, obj_mean = 0.0, obj_max = 0.0;
  double eps_hat_min = 0.0, eps_hat_mean = 0.0, eps_hat_max = 0.0;
  double eps_post_min = 0.0, eps_post_mean = 0.0, eps_post_max = 0.0;
  double set_size_mean = 0.0;
  int set_size_min = 0, set_size_max = 0;
  double degenerate_rate = 0.0;  // fraction of decided trials reported degenerate
  double solve_count_mean = 0.0;
  double wall_ms_mean = 0.0;
};

struct ExperimentReport {
  int schema_version = 1;
  double beta = 0.0;
  long m_oos = 0;
  uint64_t master_seed = 0;
  std::string case_name;
  std::vector<TrialRow> rows;        // sorted by (n, trial)
  std::vector<NAggregate> per_n;
};

/// One trial: sample N scenarios, solve the scenario problem, reduce via
/// the two-stage algorithm, certify epsilon(N, |set|, beta), estimate the
/// out-of-sample violation rate. Trials run independently (optionally in
/// parallel); failures are recorded per row without aborting the sweep.
ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace scenuc
