#pragma once

#include <memory>
#include <string>
#include <vector>

#include "scenuc/scenario.hpp"
#include "scenuc/sets.hpp"

namespace scenuc {

/// Column layout of the unit-commitment decision vector:
/// z[t][i], (u[t][i], v[t][i] when commitment logic is on), g[t][k][i],
/// (r[t][i] when reserve is on). t is 1-based in [1, n_t], k in [0, n_k].
struct UcLayout {
  int n_g = 0, n_k = 0, n_t = 0;
  bool reserve = false;
  bool logic = false;

  static UcLayout of(const GridCase& grid);

  int z(int t, int i) const { return (t - 1) * n_g + i; }
  int u(int t, int i) const { return block_u() + (t - 1) * n_g + i; }
  int v(int t, int i) const { return block_v() + (t - 1) * n_g + i; }
  int g(int t, int k, int i) const { return block_g() + ((t - 1) * (n_k + 1) + k) * n_g + i; }
  int r(int t, int i) const { return block_r() + (t - 1) * n_g + i; }

  int block_u() const { return n_t * n_g; }
  int block_v() const { return block_u() + (logic ? n_t * n_g : 0); }
  int block_g() const { return block_v() + (logic ? n_t * n_g : 0); }
  int block_r() const { return block_g() + n_t * (n_k + 1) * n_g; }
  int num_vars() const { return block_r() + (reserve ? n_t * n_g : 0); }

  std::vector<int> binary_mask() const;
};

struct UcSolution {
  MilpStatus status = MilpStatus::Infeasible;
  double objective = 0.0;
  std::vector<std::vector<int>> z, u, v;          // [t-1][i]
  std::vector<std::vector<std::vector<double>>> g;  // [t-1][k][i]
  std::vector<std::vector<double>> r;             // [t-1][i]
  std::vector<double> primal;                     // raw decision vector
  long node_count = 0;
};

/// Deterministic unit commitment: Ec. groups are tagged balance(t,k),
/// line(t,k,l), ramp(t,k), contingency-link(t,k), gencap(t), resgencap(t),
/// startup(t), shutdown(t), minon(i,t,iota), minoff(i,t,iota).
MixedIntegerProgram build_dscuc(const GridCase& grid);

/// The scenario unit-commitment problem: deterministic model plus, per
/// scenario, balance and line rows at the realized wind/load for every
/// (t, k). Rows are scenario-tagged so subset solves and per-scenario dual
/// norms fall out directly.
class ScucScenarioProblem final : public TwoStageOracle {
 public:
  ScucScenarioProblem(GridCase grid, ScenarioSet scenarios, MilpOptions options = {},
                      ObjectiveEquality eq = {});

  int scenario_count() const override { return inner_->scenario_count(); }
  ObjectiveEquality equality() const override { return inner_->equality(); }
  OracleSolveResult solve_subset(std::span<const int> subset,
                                 const OracleSolveResult* warm_start) const override {
    return inner_->solve_subset(subset, warm_start);
  }
  ScenarioLp second_stage(const OracleSolveResult& full_solution) const override {
    return inner_->second_stage(full_solution);
  }

  const GridCase& grid() const { return grid_; }
  const ScenarioSet& scenarios() const { return scenarios_; }
  const UcLayout& layout() const { return layout_; }
  const MilpScenarioOracle& model() const { return *inner_; }

  UcSolution extract(const OracleSolveResult& res) const;

 private:
  GridCase grid_;
  ScenarioSet scenarios_;
  UcLayout layout_;
  std::unique_ptr<MilpScenarioOracle> inner_;
};

ScucScenarioProblem build_sscuc(GridCase grid, ScenarioSet scenarios, MilpOptions options = {},
                                ObjectiveEquality eq = {});

/// Second-stage LP family at a fixed commitment schedule. Validates the
/// schedule against the pure-binary constraint set first and throws
/// FirstStageInfeasible if it is violated; the returned family may still
/// solve Infeasible (e.g. everything off under positive load).
ScenarioLp fix_first_stage(const GridCase& grid, const ScenarioSet& scenarios,
                           const std::vector<std::vector<int>>& z,
                           const std::vector<std::vector<int>>& u,
                           const std::vector<std::vector<int>>& v);

struct ViolationReport {
  bool violated = false;
  double worst_balance = 0.0;  // positive residuals in MW
  double worst_line = 0.0;
  bool balance_violated = false;
  bool line_violated = false;
};

/// Precomputed per-(t,k) dispatch terms so a realization check costs a few
/// dot products over the error vectors. Used by the Monte-Carlo loop.
class ViolationEvaluator {
 public:
  ViolationEvaluator(const GridCase& grid, const UcSolution& solution, double tol_mw = 1e-6);

  ViolationReport check(const ScenarioRealization& realization) const;

 private:
  const GridCase& grid_;
  PtdfTables ptdf_;
  double tol_;
  int n_t_, n_k_, n_l_;
  std::vector<double> balance_base_;              // [t*(K+1)+k]
  std::vector<std::vector<double>> flow_base_;    // [t*(K+1)+k][line]
  std::vector<double> flow_hi_, flow_lo_;         // [line]
};

/// Evaluates the scenario-constraint families (balance and line rows for
/// all t and k) at one realization with the solution's dispatch fixed.
ViolationReport check_solution_feasible(const GridCase& grid, const UcSolution& solution,
                                        const ScenarioRealization& realization,
                                        double tol_mw = 1e-6);

}  // namespace scenuc
