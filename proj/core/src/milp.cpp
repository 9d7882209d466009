#include "scenuc/milp.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <utility>

namespace scenuc {

void MixedIntegerProgram::validate() const {
  relaxation.validate();
  for (int j : binary_mask) {
    if (j < 0 || j >= relaxation.num_vars())
      throw MalformedProblem("binary_mask references undeclared variable");
    if (relaxation.lower[j] < -1e-9 || relaxation.upper[j] > 1.0 + 1e-9)
      throw MalformedProblem("binary variable bounds must lie within [0,1]");
  }
}

namespace {

struct Node {
  double bound;  // parent relaxation objective, a valid lower bound
  long seq;
  // (var, fixed value) decisions along the path from the root
  std::vector<std::pair<int, double>> fixings;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;  // best bound first
    return a.seq > b.seq;                              // then FIFO
  }
};

int pick_branch_var(const MixedIntegerProgram& mip, const std::vector<double>& x,
                    BranchRule rule, double int_tol) {
  int best = -1;
  double best_frac = int_tol;
  for (int j : mip.binary_mask) {
    const double f = std::fabs(x[j] - std::round(x[j]));
    if (f <= int_tol) continue;
    if (rule == BranchRule::LowestIndex) return j;
    const double score = std::min(x[j] - std::floor(x[j]), std::ceil(x[j]) - x[j]);
    if (score > best_frac) {
      best_frac = score;
      best = j;
    }
  }
  return best;
}

bool warm_start_feasible(const MixedIntegerProgram& mip, const std::vector<double>& x,
                         const MilpOptions& opts) {
  if (static_cast<int>(x.size()) != mip.relaxation.num_vars()) return false;
  if (mip.relaxation.max_violation(x) > 10.0 * opts.lp_tol.feasibility) return false;
  for (int j : mip.binary_mask)
    if (std::fabs(x[j] - std::round(x[j])) > opts.integrality) return false;
  return true;
}

}  // namespace

MilpSolution solve_milp(const MixedIntegerProgram& mip, const MilpOptions& opts) {
  mip.validate();
  if (opts.absolute_gap < 0.0) throw MalformedProblem("absolute_gap must be >= 0");

  MilpSolution out;
  if (opts.warm_start && warm_start_feasible(mip, *opts.warm_start, opts)) {
    out.primal = *opts.warm_start;
    for (int j : mip.binary_mask) out.primal[j] = std::round(out.primal[j]);
    out.objective = mip.relaxation.objective_value(out.primal);
    out.status = MilpStatus::Optimal;
    out.warm_start_used = true;
  }
  double incumbent = out.warm_start_used ? out.objective : kInf;

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  open.push(Node{-kInf, 0, {}});
  long seq = 0;
  long processed = 0;
  bool hit_limit = false;

  LinearProgram node_lp = mip.relaxation;
  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    const double prune_eps = std::max(opts.absolute_gap, 1e-9 * (1.0 + std::fabs(incumbent)));
    if (node.bound >= incumbent - prune_eps) continue;
    if (processed >= opts.node_limit) {
      hit_limit = true;
      break;
    }
    ++processed;

    // Apply the node's fixings on a scratch copy of the bounds.
    node_lp.lower = mip.relaxation.lower;
    node_lp.upper = mip.relaxation.upper;
    for (const auto& [var, v] : node.fixings) {
      node_lp.lower[var] = v;
      node_lp.upper[var] = v;
    }
    LpSolution rel = solve_lp_lazy(node_lp, opts.lp_tol);
    if (rel.status == SolveStatus::Infeasible) continue;
    if (rel.status == SolveStatus::Unbounded)
      throw UnboundedProblem("MILP relaxation is unbounded");
    if (rel.objective >= incumbent - prune_eps) continue;

    const int branch = pick_branch_var(mip, rel.primal, opts.branch_rule, opts.integrality);
    if (branch < 0) {
      // Integral: candidate incumbent.
      if (rel.objective < incumbent) {
        out.primal = rel.primal;
        for (int j : mip.binary_mask) out.primal[j] = std::round(out.primal[j]);
        out.objective = mip.relaxation.objective_value(out.primal);
        incumbent = out.objective;
        out.status = MilpStatus::Optimal;
      }
      continue;
    }
    Node down{rel.objective, ++seq, node.fixings};
    down.fixings.emplace_back(branch, 0.0);
    Node up{rel.objective, ++seq, node.fixings};
    up.fixings.emplace_back(branch, 1.0);
    open.push(std::move(down));
    open.push(std::move(up));
  }

  out.node_count = processed;
  if (hit_limit) {
    out.status = MilpStatus::NodeLimit;
    out.proven_optimal = false;
    if (out.primal.empty()) out.objective = kInf;
    return out;
  }
  if (out.status != MilpStatus::Optimal) {
    out.status = MilpStatus::Infeasible;
    out.objective = kInf;
    out.proven_optimal = false;
    return out;
  }
  out.proven_optimal = true;
  return out;
}

}  // namespace scenuc
