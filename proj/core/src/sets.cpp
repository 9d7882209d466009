#include "scenuc/sets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace scenuc {

namespace {

std::vector<int> all_indices(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::vector<int> without(std::span<const int> set, int remove) {
  std::vector<int> v;
  v.reserve(set.size() - 1);
  for (int i : set)
    if (i != remove) v.push_back(i);
  return v;
}

OracleSolveResult solve_full_or_throw(const ScenarioProblemOracle& oracle,
                                      const std::vector<int>& all) {
  OracleSolveResult full = oracle.solve_subset(all, nullptr);
  if (full.status == MilpStatus::Infeasible)
    throw InfeasibleBase("scenario problem SP(N) is infeasible");
  return full;
}

}  // namespace

LinearProgram ScenarioLp::restrict(std::span<const int> subset) const {
  std::vector<char> keep(n_scenarios, 0);
  for (int i : subset) {
    if (i < 0 || i >= n_scenarios) throw DomainError("scenario index out of range");
    keep[i] = 1;
  }
  LinearProgram out;
  out.objective = lp.objective;
  out.lower = lp.lower;
  out.upper = lp.upper;
  for (int r = 0; r < lp.num_rows(); ++r) {
    const int s = row_scenario[r];
    if (s < 0 || keep[s]) out.rows.push_back(lp.rows[r]);
  }
  return out;
}

void ScenarioLp::validate() const {
  lp.validate();
  if (static_cast<int>(row_scenario.size()) != lp.num_rows())
    throw MalformedProblem("row_scenario size mismatch");
  for (int s : row_scenario)
    if (s < -1 || s >= n_scenarios) throw MalformedProblem("row scenario tag out of range");
}

ReductionResult support_set_by_removal(const ScenarioProblemOracle& oracle) {
  const int n = oracle.scenario_count();
  const ObjectiveEquality eq = oracle.equality();
  ReductionResult res;
  res.kind = ReductionKind::Support;
  const std::vector<int> all = all_indices(n);
  OracleSolveResult full = solve_full_or_throw(oracle, all);
  res.solve_count = 1;
  res.full_objective = full.objective;
  res.hit_node_limit = full.status == MilpStatus::NodeLimit;
  for (int i = 0; i < n; ++i) {
    OracleSolveResult sub = oracle.solve_subset(without(all, i), &full);
    ++res.solve_count;
    res.hit_node_limit = res.hit_node_limit || sub.status == MilpStatus::NodeLimit;
    if (sub.status == MilpStatus::Infeasible)
      throw InfeasibleBase("subset problem infeasible; Assumption of feasible SP violated");
    if (eq.strictly_below(sub.objective, full.objective)) res.indices.push_back(i);
  }
  return res;
}

ReductionResult support_set_via_duals(const ScenarioLp& family, const ObjectiveEquality& eq,
                                      const ToleranceConfig& tol, double dual_threshold) {
  family.validate();
  ReductionResult res;
  res.kind = ReductionKind::Support;

  LpSolution full = solve_lp_lazy(family.lp, tol);
  res.solve_count = 1;
  if (full.status == SolveStatus::Infeasible)
    throw InfeasibleBase("second-stage LP infeasible");
  if (full.status == SolveStatus::Unbounded)
    throw UnboundedProblem("second-stage LP unbounded");
  res.full_objective = full.objective;

  // Strict-feasibility probe over the scenario rows (the hypothesis behind
  // the dual screen). Base rows stay hard: fixed commitments create pinned
  // base inequalities that say nothing about the scenario constraints.
  {
    LinearProgram aug = family.lp;
    const int t = aug.add_variable(-kInf, 1.0, 0.0);
    for (double& c : aug.objective) c = 0.0;
    aug.objective[t] = -1.0;
    bool any = false;
    for (int r = 0; r < family.lp.num_rows(); ++r) {
      if (family.row_scenario[r] < 0 || aug.rows[r].sense == RowSense::EQ) continue;
      const double scale = std::max(1.0, aug.rows[r].norm2());
      aug.rows[r].idx.push_back(t);
      aug.rows[r].coef.push_back(aug.rows[r].sense == RowSense::LE ? scale : -scale);
      any = true;
    }
    if (any) {
      LpSolution probe = solve_lp_lazy(aug, tol);
      if (probe.status != SolveStatus::Optimal || -probe.objective <= tol.feasibility)
        res.precondition_warning = true;
    }
  }

  // Scenario dual norms, scaled by row norms so the screen is insensitive
  // to row scaling.
  std::vector<double> score(family.n_scenarios, 0.0);
  for (int r = 0; r < family.lp.num_rows(); ++r) {
    const int s = family.row_scenario[r];
    if (s < 0) continue;
    score[s] = std::max(score[s], std::fabs(full.duals[r]) * family.lp.rows[r].norm2());
  }
  std::vector<int> candidates;
  for (int s = 0; s < family.n_scenarios; ++s)
    if (score[s] > dual_threshold) candidates.push_back(s);

  // Confirm candidates by removal inside the candidate set: scenarios with
  // zero dual norm are removable without changing the optimum here.
  for (int i : candidates) {
    LpSolution sub = solve_lp_lazy(family.restrict(without(candidates, i)), tol);
    ++res.solve_count;
    if (sub.status != SolveStatus::Optimal)
      throw InfeasibleBase("candidate-removal LP not optimal");
    if (eq.strictly_below(sub.objective, full.objective)) res.indices.push_back(i);
  }
  return res;
}

ReductionResult irreducible_set(const ScenarioProblemOracle& oracle, std::span<const int> order) {
  const int n = oracle.scenario_count();
  const ObjectiveEquality eq = oracle.equality();
  std::vector<int> removal_order;
  if (order.empty()) {
    removal_order.resize(n);
    for (int i = 0; i < n; ++i) removal_order[i] = n - 1 - i;  // descending by default
  } else {
    removal_order.assign(order.begin(), order.end());
    std::vector<int> check = removal_order;
    std::sort(check.begin(), check.end());
    if (check != all_indices(n)) throw DomainError("order must be a permutation of 0..N-1");
  }

  ReductionResult res;
  res.kind = ReductionKind::Irreducible;
  std::vector<int> current = all_indices(n);
  OracleSolveResult best = solve_full_or_throw(oracle, current);
  res.solve_count = 1;
  res.full_objective = best.objective;
  res.hit_node_limit = best.status == MilpStatus::NodeLimit;

  for (int i : removal_order) {
    const std::vector<int> trial = without(current, i);
    OracleSolveResult sub = oracle.solve_subset(trial, &best);
    ++res.solve_count;
    res.hit_node_limit = res.hit_node_limit || sub.status == MilpStatus::NodeLimit;
    if (sub.status == MilpStatus::Infeasible)
      throw InfeasibleBase("subset problem infeasible during reduction");
    if (eq.equal(res.full_objective, sub.objective)) {
      current = trial;
      best = std::move(sub);  // warm start for the next removal
    }
  }
  res.indices = current;
  return res;
}

ReductionResult two_stage_essential(const TwoStageOracle& oracle, const ToleranceConfig& lp_tol) {
  const int n = oracle.scenario_count();
  const ObjectiveEquality eq = oracle.equality();
  const std::vector<int> all = all_indices(n);

  OracleSolveResult full = solve_full_or_throw(oracle, all);
  if (n == 0) {
    ReductionResult res;
    res.hit_node_limit = full.status == MilpStatus::NodeLimit;
    res.kind = res.hit_node_limit ? ReductionKind::Irreducible : ReductionKind::Essential;
    res.degenerate = res.hit_node_limit ? Degeneracy::Unknown : Degeneracy::NonDegenerate;
    res.solve_count = 1;
    res.full_objective = full.objective;
    return res;
  }

  ScenarioLp family = oracle.second_stage(full);
  ReductionResult second = support_set_via_duals(family, eq, lp_tol);

  OracleSolveResult verify = oracle.solve_subset(second.indices, &full);
  const long spent = 1 + second.solve_count + 1;
  const bool node_limited =
      full.status == MilpStatus::NodeLimit || verify.status == MilpStatus::NodeLimit;

  if (verify.status != MilpStatus::Infeasible && eq.equal(full.objective, verify.objective)) {
    ReductionResult res;
    // Node-limited incumbents cannot certify minimality, so the set is
    // reported as merely invariant-irreducible with degeneracy Unknown.
    res.kind = node_limited ? ReductionKind::Irreducible : ReductionKind::Essential;
    res.indices = second.indices;
    res.degenerate = node_limited ? Degeneracy::Unknown : Degeneracy::NonDegenerate;
    res.solve_count = spent;
    res.full_objective = full.objective;
    res.precondition_warning = second.precondition_warning;
    res.hit_node_limit = node_limited;
    return res;
  }

  ReductionResult res = irreducible_set(oracle);
  res.hit_node_limit = res.hit_node_limit || node_limited;
  res.degenerate = res.hit_node_limit ? Degeneracy::Unknown : Degeneracy::Degenerate;
  res.solve_count += spent;
  res.precondition_warning = second.precondition_warning;
  return res;
}

Degeneracy is_degenerate(const ScenarioProblemOracle& oracle) {
  const ObjectiveEquality eq = oracle.equality();
  ReductionResult support = support_set_by_removal(oracle);
  if (support.hit_node_limit) return Degeneracy::Unknown;
  const std::vector<int> all = all_indices(oracle.scenario_count());
  OracleSolveResult full = oracle.solve_subset(all, nullptr);
  OracleSolveResult restricted = oracle.solve_subset(support.indices, &full);
  if (restricted.status == MilpStatus::NodeLimit || full.status == MilpStatus::NodeLimit)
    return Degeneracy::Unknown;
  if (restricted.status == MilpStatus::Infeasible) return Degeneracy::Degenerate;
  return eq.equal(full.objective, restricted.objective) ? Degeneracy::NonDegenerate
                                                        : Degeneracy::Degenerate;
}

std::vector<std::vector<int>> brute_force_essential_sets(const ScenarioProblemOracle& oracle) {
  const int n = oracle.scenario_count();
  if (n > 12) throw TooLarge("brute force enumeration capped at 12 scenarios");
  const ObjectiveEquality eq = oracle.equality();
  const std::vector<int> all = all_indices(n);
  OracleSolveResult full = solve_full_or_throw(oracle, all);

  std::vector<std::vector<int>> minimal;
  // Increasing cardinality: the first size with an invariant subset is the
  // essential cardinality; collect every invariant subset of that size.
  for (int size = 0; size <= n; ++size) {
    std::vector<int> pick(size);
    for (int i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      OracleSolveResult sub = oracle.solve_subset(pick, &full);
      if (sub.status != MilpStatus::Infeasible && eq.equal(full.objective, sub.objective))
        minimal.push_back(pick);
      if (size == 0) break;
      int i = size - 1;
      while (i >= 0 && pick[i] == n - size + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int k = i + 1; k < size; ++k) pick[k] = pick[k - 1] + 1;
    }
    if (!minimal.empty()) break;
  }
  return minimal;
}

MilpScenarioOracle::MilpScenarioOracle(MixedIntegerProgram full, std::vector<int> row_scenario,
                                       int n_scenarios, MilpOptions options, ObjectiveEquality eq)
    : full_(std::move(full)),
      row_scenario_(std::move(row_scenario)),
      n_scenarios_(n_scenarios),
      options_(std::move(options)),
      eq_(eq) {
  full_.validate();
  if (static_cast<int>(row_scenario_.size()) != full_.relaxation.num_rows())
    throw MalformedProblem("row_scenario size mismatch");
}

OracleSolveResult MilpScenarioOracle::solve_subset(std::span<const int> subset,
                                                   const OracleSolveResult* warm_start) const {
  std::vector<char> keep(n_scenarios_, 0);
  for (int i : subset) {
    if (i < 0 || i >= n_scenarios_) throw DomainError("scenario index out of range");
    keep[i] = 1;
  }
  MixedIntegerProgram sub;
  sub.relaxation.objective = full_.relaxation.objective;
  sub.relaxation.lower = full_.relaxation.lower;
  sub.relaxation.upper = full_.relaxation.upper;
  sub.binary_mask = full_.binary_mask;
  for (int r = 0; r < full_.relaxation.num_rows(); ++r) {
    const int s = row_scenario_[r];
    if (s < 0 || keep[s]) sub.relaxation.rows.push_back(full_.relaxation.rows[r]);
  }
  MilpOptions opts = options_;
  if (warm_start && warm_start->status != MilpStatus::Infeasible && !warm_start->primal.empty())
    opts.warm_start = warm_start->primal;
  MilpSolution sol = solve_milp(sub, opts);
  OracleSolveResult out;
  out.status = sol.status;
  out.objective = sol.objective;
  out.primal = std::move(sol.primal);
  out.node_count = sol.node_count;
  return out;
}

ScenarioLp MilpScenarioOracle::second_stage(const OracleSolveResult& full_solution) const {
  if (static_cast<int>(full_solution.primal.size()) != full_.relaxation.num_vars())
    throw DimensionMismatch("second_stage: primal size mismatch");
  ScenarioLp family;
  family.lp = full_.relaxation;
  family.row_scenario = row_scenario_;
  family.n_scenarios = n_scenarios_;
  for (int j : full_.binary_mask) {
    const double v = std::round(full_solution.primal[j]);
    family.lp.lower[j] = v;
    family.lp.upper[j] = v;
  }
  return family;
}

}  // namespace scenuc
