#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "scenuc/lp.hpp"

namespace scenuc {

/// Shared objective-equality predicate: values compared under a relative
/// tolerance anchored at the first argument, |a - b| <= rel * (1 + |a|).
/// Every optimum comparison in set reduction uses this same predicate.
struct ObjectiveEquality {
  double rel = 1e-6;

  bool equal(double a, double b) const { return std::fabs(a - b) <= rel * (1.0 + std::fabs(a)); }
  /// True when b is strictly below a beyond the tolerance band.
  bool strictly_below(double b, double a) const { return a - b > rel * (1.0 + std::fabs(a)); }
};

struct MixedIntegerProgram {
  LinearProgram relaxation;
  std::vector<int> binary_mask;  // variable indices restricted to {0,1}

  void validate() const;
};

enum class MilpStatus { Optimal, Infeasible, NodeLimit };

struct MilpSolution {
  MilpStatus status = MilpStatus::Infeasible;
  std::vector<double> primal;
  double objective = 0.0;
  long node_count = 0;
  bool warm_start_used = false;
  /// False only when the node limit stopped the search before the gap closed.
  bool proven_optimal = false;
};

enum class BranchRule { MostFractional, LowestIndex };

struct MilpOptions {
  std::optional<std::vector<double>> warm_start;
  double absolute_gap = 0.0;
  long node_limit = 1000000;
  BranchRule branch_rule = BranchRule::MostFractional;
  double integrality = 1e-6;
  ToleranceConfig lp_tol;
};

/// Exact branch-and-bound over the binary mask: best-bound node selection,
/// lowest-variable-index tie-breaking, deterministic for identical inputs.
/// A feasible warm start becomes the initial incumbent, which makes the
/// returned objective never worse than the warm start's.
MilpSolution solve_milp(const MixedIntegerProgram& mip, const MilpOptions& opts = {});

}  // namespace scenuc
