#include <doctest.h>

#include "scenuc/oracles.hpp"
#include "scenuc/random_problems.hpp"
#include "support/test_helpers.hpp"

using namespace scenuc;
using namespace scenuc::testing;

namespace {

// Simplified 3-bus scenario commitment problem (marginal costs only):
// variables z1, z2, g1, g2; base forecast rows plus one row block per
// scenario (wind, load) realization.
MixedIntegerProgram three_bus_milp(const std::vector<std::pair<double, double>>& scenarios) {
  LinearProgram lp;
  const int z1 = lp.add_variable(0.0, 1.0, 0.0);
  const int z2 = lp.add_variable(0.0, 1.0, 0.0);
  const int g1 = lp.add_variable(0.0, 100.0, 1.0);
  const int g2 = lp.add_variable(0.0, 90.0, 100.0);
  auto block = [&](double wind, double load) {
    lp.add_row({g1, g2}, {1.0, 1.0}, RowSense::GE, load - wind, "balance");
    lp.add_row({g1, g2}, {1.0 / 3, -1.0 / 3}, RowSense::LE, 20.0 + wind / 3.0, "line");
    lp.add_row({g1, g2}, {1.0 / 3, -1.0 / 3}, RowSense::GE, -20.0 + wind / 3.0, "line");
  };
  block(30.0, 110.0);  // forecast
  for (const auto& [wind, load] : scenarios) block(wind, load);
  lp.add_row({g1, z1}, {1.0, -20.0}, RowSense::GE, 0.0, "gencap");
  lp.add_row({g1, z1}, {1.0, -100.0}, RowSense::LE, 0.0, "gencap");
  lp.add_row({g2, z2}, {1.0, -20.0}, RowSense::GE, 0.0, "gencap");
  lp.add_row({g2, z2}, {1.0, -90.0}, RowSense::LE, 0.0, "gencap");
  return MixedIntegerProgram{std::move(lp), {z1, z2}};
}

}  // namespace

TEST_CASE("three-bus commitment with all scenarios") {
  MixedIntegerProgram mip = three_bus_milp({{36, 121}, {15, 80}, {5, 75}});
  MilpSolution sol = solve_milp(mip);
  REQUIRE(sol.status == MilpStatus::Optimal);
  CHECK(sol.primal[0] == doctest::Approx(1.0));
  CHECK(sol.primal[1] == doctest::Approx(1.0));
  CHECK(sol.primal[2] == doctest::Approx(65.0));
  CHECK(sol.primal[3] == doctest::Approx(20.0));
  CHECK(sol.objective == doctest::Approx(2065.0));
  CHECK(sol.proven_optimal);

  MilpSolution truth = binary_enumeration_oracle(mip);
  CHECK(close_rel(sol.objective, truth.objective));
}

TEST_CASE("three-bus commitment with scenario 1 only") {
  MixedIntegerProgram mip = three_bus_milp({{36, 121}});
  MilpSolution sol = solve_milp(mip);
  REQUIRE(sol.status == MilpStatus::Optimal);
  CHECK(sol.primal[0] == doctest::Approx(1.0));
  CHECK(sol.primal[1] == doctest::Approx(0.0));
  CHECK(sol.primal[2] == doctest::Approx(85.0));
  CHECK(sol.objective == doctest::Approx(85.0));
}

TEST_CASE("empty binary mask reduces to the LP") {
  LinearProgram lp = three_bus_lp();
  MixedIntegerProgram mip{lp, {}};
  MilpSolution sol = solve_milp(mip);
  LpSolution ref = solve_lp(lp);
  REQUIRE(sol.status == MilpStatus::Optimal);
  CHECK(close_rel(sol.objective, ref.objective));
  CHECK(sol.node_count == 1);
}

TEST_CASE("infeasible for every assignment") {
  LinearProgram lp;
  const int z = lp.add_variable(0.0, 1.0, 1.0);
  const int x = lp.add_variable(0.0, 1.0, 1.0);
  lp.add_row({x, z}, {1.0, 1.0}, RowSense::GE, 3.0, "");
  MixedIntegerProgram mip{lp, {z}};
  CHECK(solve_milp(mip).status == MilpStatus::Infeasible);
  CHECK(binary_enumeration_oracle(mip).status == MilpStatus::Infeasible);
}

TEST_CASE("binaries fixed by bounds collapse to one LP") {
  LinearProgram lp;
  const int z = lp.add_variable(1.0, 1.0, 5.0);
  const int x = lp.add_variable(0.0, 2.0, 1.0);
  lp.add_row({x, z}, {1.0, -1.0}, RowSense::GE, 0.0, "");
  MixedIntegerProgram mip{lp, {z}};
  MilpSolution sol = binary_enumeration_oracle(mip);
  REQUIRE(sol.status == MilpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(6.0));
  CHECK(close_rel(solve_milp(mip).objective, sol.objective));
}

TEST_CASE("oracle equivalence on 100 random MILPs") {
  SplitMix64 rng(0x2222ull);
  for (int it = 0; it < 100; ++it) {
    MixedIntegerProgram mip = random_feasible_milp(rng, 8, 8);
    CAPTURE(it);
    MilpSolution a = solve_milp(mip);
    MilpSolution b = binary_enumeration_oracle(mip);
    REQUIRE(a.status == MilpStatus::Optimal);
    REQUIRE(b.status == MilpStatus::Optimal);
    CHECK(close_rel(a.objective, b.objective));
    for (int j : mip.binary_mask)
      CHECK(std::fabs(a.primal[j] - std::round(a.primal[j])) <= 1e-6);
    CHECK(close_rel(a.objective, mip.relaxation.objective_value(a.primal)));
  }
}

TEST_CASE("warm-started subset solves are monotone") {
  SplitMix64 rng(0x3333ull);
  for (int it = 0; it < 60; ++it) {
    MilpScenarioOracle oracle = random_scenario_problem(rng, 6, true);
    CAPTURE(it);
    OracleSolveResult full = oracle.solve_subset(iota_vec(6), nullptr);
    REQUIRE(full.status == MilpStatus::Optimal);
    std::vector<int> subset;
    for (int s = 0; s < 6; ++s)
      if (rng.next() % 2) subset.push_back(s);
    OracleSolveResult sub = oracle.solve_subset(subset, &full);
    REQUIRE(sub.status == MilpStatus::Optimal);
    CHECK(sub.objective <= full.objective + 1e-9 * (1.0 + std::fabs(full.objective)));
  }
}

TEST_CASE("warm start caps the returned objective") {
  MixedIntegerProgram mip = three_bus_milp({{36, 121}, {15, 80}, {5, 75}});
  MilpSolution cold = solve_milp(mip);
  MilpOptions opts;
  opts.warm_start = cold.primal;
  MilpSolution warm = solve_milp(mip, opts);
  CHECK(warm.warm_start_used);
  CHECK(warm.objective <= cold.objective + 1e-9);
}

TEST_CASE("node limit returns the incumbent flagged suboptimal") {
  // Fractional root relaxation, so one node cannot close the gap.
  LinearProgram lp;
  const int z1 = lp.add_variable(0.0, 1.0, -1.0);
  const int z2 = lp.add_variable(0.0, 1.0, -1.0);
  lp.add_row({z1, z2}, {1.0, 1.0}, RowSense::LE, 1.5, "");
  MixedIntegerProgram mip{lp, {z1, z2}};
  MilpOptions opts;
  opts.node_limit = 1;
  MilpSolution limited = solve_milp(mip, opts);
  CHECK(limited.status == MilpStatus::NodeLimit);
  CHECK_FALSE(limited.proven_optimal);
  MilpSolution full = solve_milp(mip);
  CHECK(full.status == MilpStatus::Optimal);
  CHECK(full.objective == doctest::Approx(-1.0));
}

TEST_CASE("branch rules agree on the optimum") {
  SplitMix64 rng(0x6666ull);
  for (int it = 0; it < 30; ++it) {
    MixedIntegerProgram mip = random_feasible_milp(rng, 6, 5);
    MilpOptions most, lowest;
    lowest.branch_rule = BranchRule::LowestIndex;
    CHECK(close_rel(solve_milp(mip, most).objective, solve_milp(mip, lowest).objective));
  }
}

TEST_CASE("determinism: identical incumbents across repeated solves") {
  SplitMix64 rng(0x8888ull);
  for (int it = 0; it < 20; ++it) {
    MixedIntegerProgram mip = random_feasible_milp(rng, 7, 5);
    MilpSolution a = solve_milp(mip);
    MilpSolution b = solve_milp(mip);
    CHECK(a.primal == b.primal);
    CHECK(a.node_count == b.node_count);
  }
}

TEST_CASE("a positive absolute gap still brackets the optimum") {
  MixedIntegerProgram mip = three_bus_milp({{36, 121}, {15, 80}, {5, 75}});
  MilpOptions opts;
  opts.absolute_gap = 50.0;
  MilpSolution sol = solve_milp(mip, opts);
  REQUIRE(sol.status == MilpStatus::Optimal);
  CHECK(sol.objective >= 2065.0 - 1e-9);
  CHECK(sol.objective <= 2065.0 + 50.0 + 1e-9);
  CHECK(mip.relaxation.max_violation(sol.primal) <= 1e-6);
}

TEST_CASE("binary bounds outside [0,1] are rejected") {
  LinearProgram lp;
  const int z = lp.add_variable(0.0, 2.0, 1.0);
  MixedIntegerProgram mip{lp, {z}};
  CHECK_THROWS_AS(solve_milp(mip), MalformedProblem);
}
