#pragma once

#include <memory>

#include "scenuc/rng.hpp"
#include "scenuc/sets.hpp"

namespace scenuc {

/// Generators for the cross-validation batches: every instance is built
/// around a known interior point, so feasibility (of every scenario subset)
/// holds by construction and the regions stay bounded.

/// Bounded feasible LP with n_vars <= max_vars (capped at 8 so the vertex
/// oracle stays cheap); row count shrinks as the dimension grows.
LinearProgram random_feasible_lp(SplitMix64& rng, int max_vars = 8, bool allow_equalities = true);

/// Bounded feasible MILP with at most max_binaries binaries and max_cont
/// continuous variables.
MixedIntegerProgram random_feasible_milp(SplitMix64& rng, int max_binaries = 6,
                                         int max_cont = 6);

/// Scenario problem in two-stage shape: base rows may couple binaries and
/// continuous variables, scenario rows constrain only the continuous part.
/// with_binaries == false yields a pure LP scenario problem (solved exactly,
/// hence monotone). All subsets are feasible at the built-in point.
MilpScenarioOracle random_scenario_problem(SplitMix64& rng, int n_scenarios, bool with_binaries,
                                           ObjectiveEquality eq = {});

/// Small commitment scenario problem: a two-generator, three-bus template
/// with jittered capacities, costs and listed error scenarios. Tight tie
/// lines make a useful fraction of the instances degenerate (the cheap-only
/// commitment survives once non-support scenarios are dropped). Regenerates
/// until the full scenario problem is feasible.
MilpScenarioOracle random_scuc_scenario_problem(SplitMix64& rng, int n_scenarios,
                                                ObjectiveEquality eq = {});

}  // namespace scenuc
