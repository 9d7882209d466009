#pragma once

#include <span>
#include <vector>

#include "scenuc/milp.hpp"

namespace scenuc {

struct OracleSolveResult {
  MilpStatus status = MilpStatus::Infeasible;
  double objective = kInf;
  std::vector<double> primal;
  long node_count = 0;
};

/// A subset-solvable scenario problem. Implementations must honor the
/// monotone-solve contract: solving a subset warm-started from a superset
/// solution never returns a worse objective. Exact solvers satisfy it
/// structurally; warm starts are still threaded through every call.
class ScenarioProblemOracle {
 public:
  virtual ~ScenarioProblemOracle() = default;
  virtual int scenario_count() const = 0;
  virtual ObjectiveEquality equality() const = 0;
  /// subset holds sorted 0-based scenario positions.
  virtual OracleSolveResult solve_subset(std::span<const int> subset,
                                         const OracleSolveResult* warm_start) const = 0;
};

/// Second-stage LP family: one LP whose rows are tagged with the scenario
/// they belong to (-1 for base rows), restrictable to any scenario subset.
struct ScenarioLp {
  LinearProgram lp;
  std::vector<int> row_scenario;
  int n_scenarios = 0;

  LinearProgram restrict(std::span<const int> subset) const;
  void validate() const;
};

/// Two-stage scenario problem: non-convex first stage, convex second stage
/// carrying all scenario constraints. Fixing the first stage at a solved
/// point yields the ScenarioLp used for dual-based support screening.
class TwoStageOracle : public ScenarioProblemOracle {
 public:
  virtual ScenarioLp second_stage(const OracleSolveResult& full_solution) const = 0;
};

enum class ReductionKind { Support, Irreducible, Essential };
enum class Degeneracy { NonDegenerate, Degenerate, Unknown };

struct ReductionResult {
  ReductionKind kind = ReductionKind::Support;
  std::vector<int> indices;  // sorted 0-based scenario positions
  /// Only two_stage_essential and is_degenerate decide this; other
  /// reductions leave it Unknown.
  Degeneracy degenerate = Degeneracy::Unknown;
  long solve_count = 0;
  double full_objective = 0.0;
  /// Set when the strict-feasibility probe of the dual screening failed;
  /// the result is still returned.
  bool precondition_warning = false;
  /// Some subset solve stopped at the node limit; objectives are incumbents.
  bool hit_node_limit = false;
};

/// Removal test per scenario: exactly {i : opt(N - i) < opt(N)} under the
/// shared equality predicate. N+1 oracle solves.
ReductionResult support_set_by_removal(const ScenarioProblemOracle& oracle);

/// Dual screening: candidates are scenarios whose constraint-group dual
/// norm (scaled by row norms) exceeds dual_threshold; each candidate is
/// then confirmed by removal within the candidate set. Matches
/// support_set_by_removal on non-degenerate, strictly feasible convex
/// problems; false screening positives only cost extra LP solves.
ReductionResult support_set_via_duals(const ScenarioLp& family, const ObjectiveEquality& eq,
                                      const ToleranceConfig& tol = {},
                                      double dual_threshold = 1e-6);

/// Greedy single removal pass in the given order (default: descending
/// scenario index); the result is invariant and no single scenario can be
/// removed from it without lowering the optimum. Order-dependent for
/// degenerate problems.
ReductionResult irreducible_set(const ScenarioProblemOracle& oracle,
                                std::span<const int> order = {});

/// Two-stage reduction: second-stage support via duals at the fixed first
/// stage, then one verification solve. Equal objective certifies a
/// non-degenerate problem and an essential set; otherwise falls back to
/// irreducible_set and reports the problem degenerate.
ReductionResult two_stage_essential(const TwoStageOracle& oracle,
                                    const ToleranceConfig& lp_tol = {});

/// Support set, then one solve of the support restriction: non-degenerate
/// exactly when the objectives agree. Unknown only if a solve hit the node
/// limit.
Degeneracy is_degenerate(const ScenarioProblemOracle& oracle);

/// All minimal invariant subsets by exhaustive enumeration (N <= 12);
/// the validation oracle for every reduction above.
std::vector<std::vector<int>> brute_force_essential_sets(const ScenarioProblemOracle& oracle);

/// Generic MILP-backed scenario problem: full model built once with rows
/// tagged by scenario; subset solves restrict the row set. Serves random
/// test instances and the unit-commitment model alike.
class MilpScenarioOracle : public TwoStageOracle {
 public:
  MilpScenarioOracle(MixedIntegerProgram full, std::vector<int> row_scenario, int n_scenarios,
                     MilpOptions options = {}, ObjectiveEquality eq = {});

  int scenario_count() const override { return n_scenarios_; }
  ObjectiveEquality equality() const override { return eq_; }
  OracleSolveResult solve_subset(std::span<const int> subset,
                                 const OracleSolveResult* warm_start) const override;
  /// Binary variables fixed at their solved values; rows keep their tags.
  ScenarioLp second_stage(const OracleSolveResult& full_solution) const override;

  const MixedIntegerProgram& full_model() const { return full_; }
  const std::vector<int>& row_scenarios() const { return row_scenario_; }
  const MilpOptions& options() const { return options_; }

 private:
  MixedIntegerProgram full_;
  std::vector<int> row_scenario_;
  int n_scenarios_ = 0;
  MilpOptions options_;
  ObjectiveEquality eq_;
};

}  // namespace scenuc
