#pragma once

#include <string>
#include <vector>

#include "scenuc/common.hpp"

namespace scenuc {

enum class RowSense : char { LE = 'L', GE = 'G', EQ = 'E' };

/// One linear constraint: sparse coefficient row, sense, right-hand side
/// and an opaque group label used to aggregate related rows (e.g. all
/// rows belonging to one scenario).
struct Constraint {
  std::vector<int> idx;
  std::vector<double> coef;
  RowSense sense = RowSense::LE;
  double rhs = 0.0;
  std::string group;

  int nnz() const { return static_cast<int>(idx.size()); }
  double norm2() const;
};

/// Minimization LP: min c'x subject to the rows and per-variable bounds.
/// Infinite bounds are permitted on either side (use +/-kInf).
struct LinearProgram {
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<Constraint> rows;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  int add_variable(double lo, double up, double cost);
  int add_row(Constraint c);
  int add_row(std::vector<int> idx, std::vector<double> coef, RowSense sense, double rhs,
              std::string group = {});

  double row_activity(int r, const std::vector<double>& x) const;
  double objective_value(const std::vector<double>& x) const;

  /// Residual of row r at x: positive means violated, by how much.
  double row_violation(int r, const std::vector<double>& x) const;
  double max_violation(const std::vector<double>& x) const;

  /// Throws MalformedProblem on inconsistent dimensions, out-of-range
  /// column indices or crossed bounds.
  void validate() const;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded };

/// Solver tolerances. Feasibility is absolute on row residuals and bound
/// violations; optimality is the reduced-cost threshold.
struct ToleranceConfig {
  double feasibility = 1e-7;
  double optimality = 1e-9;
  double pivot = 1e-9;
  int max_iterations = 200000;
  int restarts = 2;
};

/// Dual sign convention (documented once, used everywhere): duals[r] is the
/// shadow price d(objective)/d(rhs_r) of the minimization. Hence >=-rows
/// carry duals >= 0, <=-rows carry duals <= 0, equality rows are free.
/// Strong duality: objective == sum_r duals[r]*rhs[r]
///                            + sum_{j nonbasic at bound} reduced_costs[j]*bound_j.
struct LpSolution {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<double> primal;
  std::vector<double> duals;
  std::vector<double> reduced_costs;
  double objective = 0.0;
  /// Unbounded: improving primal ray (c'ray < 0, A*ray respects all senses).
  /// Infeasible: row multipliers from the final infeasibility-minimization
  /// pass (best-effort Farkas certificate).
  std::vector<double> ray;
  long iterations = 0;

  double dual_objective(const LinearProgram& lp) const;
};

/// Primal simplex with bounded variables: composite phase 1 that minimizes
/// the sum of bound violations, Dantzig pricing with a Bland's-rule
/// fallback once the objective stalls. Deterministic for identical inputs.
LpSolution solve_lp(const LinearProgram& lp, const ToleranceConfig& tol = {});

/// Same contract and result shape as solve_lp, via row generation: solve
/// over a working subset of rows, add every violated row, repeat until the
/// point satisfies them all. Exact (the final point is optimal for the full
/// row set); duals of rows that never entered the working set are zero,
/// which extends the working-set duals to a valid optimal dual. Much faster
/// when most rows are slack at the optimum, as in scenario problems.
LpSolution solve_lp_lazy(const LinearProgram& lp, const ToleranceConfig& tol = {});

/// Largest margin t such that all inequality rows hold with slack >= t
/// (equality rows and variable bounds are kept as-is, t capped at 1).
/// Positive margin certifies a strictly feasible point; a non-positive
/// result does not prove its absence.
double strict_feasibility_margin(const LinearProgram& lp, const ToleranceConfig& tol = {});

}  // namespace scenuc
