#include "scenuc/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "scenuc/dense.hpp"

namespace scenuc {

namespace {

// One candidate tight constraint: either a declared row or a variable bound.
struct Tight {
  bool is_row;
  int index;     // row index, or variable index
  double value;  // bound value when !is_row
};

}  // namespace

LpSolution vertex_oracle(const LinearProgram& lp, const ToleranceConfig& tol) {
  lp.validate();
  const int n = lp.num_vars();
  if (n > 12) throw TooLarge("vertex_oracle supports at most 12 variables");

  std::vector<Tight> cand;
  for (int r = 0; r < lp.num_rows(); ++r) cand.push_back({true, r, 0.0});
  for (int j = 0; j < n; ++j) {
    if (is_finite_bound(lp.lower[j])) cand.push_back({false, j, lp.lower[j]});
    if (is_finite_bound(lp.upper[j]) && lp.upper[j] != lp.lower[j])
      cand.push_back({false, j, lp.upper[j]});
  }
  const int c = static_cast<int>(cand.size());
  if (c < n) {
    LpSolution sol;
    sol.status = SolveStatus::Infeasible;  // bounded-region precondition violated
    sol.objective = kInf;
    return sol;
  }
  // Guard against combinatorial blowup: C(c, n) capped.
  double combos = 1.0;
  for (int i = 0; i < n; ++i) combos *= static_cast<double>(c - i) / (i + 1);
  if (combos > 2.5e7) throw TooLarge("vertex_oracle: too many tight-set combinations");

  LpSolution best;
  best.status = SolveStatus::Infeasible;
  best.objective = kInf;

  std::vector<int> pick(n);
  for (int i = 0; i < n; ++i) pick[i] = i;
  DenseMatrix a(n, n);
  std::vector<double> b(n), x;
  const double ft = 10.0 * tol.feasibility;

  while (true) {
    a = DenseMatrix(n, n);
    for (int i = 0; i < n; ++i) {
      const Tight& t = cand[pick[i]];
      if (t.is_row) {
        const Constraint& row = lp.rows[t.index];
        for (int k = 0; k < row.nnz(); ++k) a(i, row.idx[k]) += row.coef[k];
        b[i] = row.rhs;
      } else {
        a(i, t.index) = 1.0;
        b[i] = t.value;
      }
    }
    if (dense_solve(a, b, x, 1e-11)) {
      bool ok = true;
      for (int j = 0; j < n && ok; ++j)
        ok = x[j] >= lp.lower[j] - ft && x[j] <= lp.upper[j] + ft;
      for (int r = 0; r < lp.num_rows() && ok; ++r) ok = lp.row_violation(r, x) <= ft;
      if (ok) {
        const double obj = lp.objective_value(x);
        if (best.status != SolveStatus::Optimal || obj < best.objective) {
          best.status = SolveStatus::Optimal;
          best.objective = obj;
          best.primal = x;
        }
      }
    }
    // next n-combination of {0..c-1}
    int i = n - 1;
    while (i >= 0 && pick[i] == c - n + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int k = i + 1; k < n; ++k) pick[k] = pick[k - 1] + 1;
  }
  best.duals.assign(lp.num_rows(), 0.0);
  best.reduced_costs.assign(n, 0.0);
  return best;
}

MilpSolution binary_enumeration_oracle(const MixedIntegerProgram& mip,
                                       const ToleranceConfig& tol) {
  mip.validate();
  const int q = static_cast<int>(mip.binary_mask.size());
  if (q > 12) throw TooLarge("binary_enumeration_oracle supports at most 12 binaries");

  MilpSolution best;
  best.status = MilpStatus::Infeasible;
  best.objective = kInf;

  LinearProgram fixed = mip.relaxation;
  for (long mask = 0; mask < (1L << q); ++mask) {
    fixed.lower = mip.relaxation.lower;
    fixed.upper = mip.relaxation.upper;
    bool compatible = true;
    for (int i = 0; i < q; ++i) {
      const int var = mip.binary_mask[i];
      const double v = (mask >> i) & 1 ? 1.0 : 0.0;
      if (v < mip.relaxation.lower[var] - 1e-12 || v > mip.relaxation.upper[var] + 1e-12) {
        compatible = false;
        break;
      }
      fixed.lower[var] = v;
      fixed.upper[var] = v;
    }
    if (!compatible) continue;
    LpSolution sol = solve_lp(fixed, tol);
    if (sol.status == SolveStatus::Unbounded) throw UnboundedProblem("oracle: unbounded LP");
    if (sol.status != SolveStatus::Optimal) continue;
    best.node_count += 1;
    if (best.status != MilpStatus::Optimal || sol.objective < best.objective) {
      best.status = MilpStatus::Optimal;
      best.objective = sol.objective;
      best.primal = sol.primal;
      for (int var : mip.binary_mask) best.primal[var] = std::round(best.primal[var]);
    }
  }
  best.proven_optimal = best.status == MilpStatus::Optimal;
  return best;
}

}  // namespace scenuc
