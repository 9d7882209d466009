#pragma once

#include "scenuc/lp.hpp"
#include "scenuc/milp.hpp"

namespace scenuc {

/// Independent LP test oracle: enumerates every basic point (each choice of
/// num_vars tight constraints among rows and finite bounds), keeps the
/// feasible ones and returns the true optimum. Requires a bounded feasible
/// region and at most 12 variables; throws TooLarge otherwise. No duals.
LpSolution vertex_oracle(const LinearProgram& lp, const ToleranceConfig& tol = {});

/// Independent MILP test oracle: solves the LP for every assignment of the
/// binary mask (at most 12 binaries) and returns the best.
MilpSolution binary_enumeration_oracle(const MixedIntegerProgram& mip,
                                       const ToleranceConfig& tol = {});

}  // namespace scenuc
