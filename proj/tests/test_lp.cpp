#include <doctest.h>

#include <thread>

#include "scenuc/oracles.hpp"
#include "scenuc/random_problems.hpp"
#include "support/test_helpers.hpp"

using namespace scenuc;
using namespace scenuc::testing;

TEST_CASE("three-bus second stage at z=(1,1)") {
  LinearProgram lp = three_bus_lp();
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.primal[0] == doctest::Approx(60.0));
  CHECK(sol.primal[1] == doctest::Approx(20.0));
  CHECK(sol.objective == doctest::Approx(2060.0));

  LpSolution truth = vertex_oracle(lp);
  REQUIRE(truth.status == SolveStatus::Optimal);
  CHECK(close_rel(sol.objective, truth.objective));
}

TEST_CASE("bound-active minima") {
  LinearProgram lp;
  lp.add_variable(0.0, 5.0, 1.0);
  LpSolution sol = solve_lp(lp);
  CHECK(sol.primal[0] == doctest::Approx(0.0));
  CHECK(sol.objective == doctest::Approx(0.0));

  lp.objective[0] = -1.0;
  sol = solve_lp(lp);
  CHECK(sol.primal[0] == doctest::Approx(5.0));
  CHECK(sol.objective == doctest::Approx(-5.0));
}

TEST_CASE("infeasible box yields a certificate") {
  LinearProgram lp;
  const int x = lp.add_variable(-kInf, kInf, 1.0);
  lp.add_row({x}, {1.0}, RowSense::GE, 1.0, "");
  lp.add_row({x}, {1.0}, RowSense::LE, 0.0, "");
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == SolveStatus::Infeasible);
  CHECK(farkas_gap_positive(lp, sol.ray));

  LpSolution oracle = vertex_oracle(lp);
  CHECK(oracle.status == SolveStatus::Infeasible);
}

TEST_CASE("unbounded problem yields an improving ray") {
  LinearProgram lp;
  const int x = lp.add_variable(0.0, kInf, -1.0);
  const int y = lp.add_variable(0.0, 4.0, 0.5);
  lp.add_row({x, y}, {-1.0, 1.0}, RowSense::LE, 2.0, "");
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == SolveStatus::Unbounded);
  REQUIRE(sol.ray.size() == 2);
  CHECK(lp.objective_value(sol.ray) < -1e-9);
  // Walking along the ray stays feasible.
  std::vector<double> probe = sol.primal;
  for (int j = 0; j < 2; ++j) probe[j] += 1000.0 * sol.ray[j];
  CHECK(lp.max_violation(probe) <= 1e-6);
}

TEST_CASE("equality rows report one multiplier per declared row") {
  LinearProgram lp;
  const int a = lp.add_variable(0.0, 10.0, 1.0);
  const int b = lp.add_variable(0.0, 10.0, 2.0);
  lp.add_row({a, b}, {1.0, 1.0}, RowSense::EQ, 6.0, "mix");
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.primal[0] == doctest::Approx(6.0));
  REQUIRE(sol.duals.size() == 1);
  // Shadow price of the equality: one more unit of rhs costs 1 (served by a).
  CHECK(sol.duals[0] == doctest::Approx(1.0));
  CHECK(close_rel(sol.objective, sol.dual_objective(lp)));
}

TEST_CASE("malformed problems are rejected") {
  LinearProgram lp;
  lp.add_variable(1.0, -1.0, 0.0);
  CHECK_THROWS_AS(solve_lp(lp), MalformedProblem);

  LinearProgram lp2;
  lp2.add_variable(0.0, 1.0, 0.0);
  lp2.add_row({3}, {1.0}, RowSense::LE, 1.0, "");
  CHECK_THROWS_AS(solve_lp(lp2), MalformedProblem);
}

TEST_CASE("oracle equivalence on 200 random LPs") {
  SplitMix64 rng(0x1234ull);
  for (int it = 0; it < 200; ++it) {
    LinearProgram lp = random_feasible_lp(rng);
    CAPTURE(it);
    LpSolution sol = solve_lp(lp);
    LpSolution truth = vertex_oracle(lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    REQUIRE(truth.status == SolveStatus::Optimal);
    CHECK(close_rel(sol.objective, truth.objective));
  }
}

TEST_CASE("strong duality and complementary slackness on random LPs") {
  SplitMix64 rng(0x9876ull);
  for (int it = 0; it < 150; ++it) {
    LinearProgram lp = random_feasible_lp(rng);
    CAPTURE(it);
    LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(std::fabs(sol.objective - sol.dual_objective(lp)) <=
          1e-7 * (1.0 + std::fabs(sol.objective)));
    for (int r = 0; r < lp.num_rows(); ++r) {
      const double slack = -lp.row_violation(r, sol.primal);  // >= 0 when satisfied
      if (lp.rows[r].sense == RowSense::EQ) continue;
      CHECK(std::fabs(sol.duals[r]) * std::max(0.0, slack) <= 1e-5);
      // documented sign convention: shadow prices
      if (lp.rows[r].sense == RowSense::GE) CHECK(sol.duals[r] >= -1e-9);
      if (lp.rows[r].sense == RowSense::LE) CHECK(sol.duals[r] <= 1e-9);
    }
  }
}

TEST_CASE("deleting a row never increases the optimum") {
  SplitMix64 rng(0x5555ull);
  for (int it = 0; it < 100; ++it) {
    LinearProgram lp = random_feasible_lp(rng);
    CAPTURE(it);
    LpSolution base = solve_lp(lp);
    REQUIRE(base.status == SolveStatus::Optimal);
    for (int r = 0; r < lp.num_rows(); ++r) {
      LinearProgram reduced = lp;
      reduced.rows.erase(reduced.rows.begin() + r);
      LpSolution sol = solve_lp(reduced);
      REQUIRE(sol.status == SolveStatus::Optimal);
      CHECK(sol.objective <= base.objective + 1e-9 * (1.0 + std::fabs(base.objective)));
    }
  }
}

TEST_CASE("lazy row generation matches the plain solve") {
  SplitMix64 rng(0xABCDull);
  for (int it = 0; it < 150; ++it) {
    LinearProgram lp = random_feasible_lp(rng);
    CAPTURE(it);
    LpSolution a = solve_lp(lp);
    LpSolution b = solve_lp_lazy(lp);
    REQUIRE(a.status == SolveStatus::Optimal);
    REQUIRE(b.status == b.status);
    REQUIRE(b.status == SolveStatus::Optimal);
    CHECK(close_rel(a.objective, b.objective));
    CHECK(lp.max_violation(b.primal) <= 1e-6);
    // Zero-extended duals still satisfy strong duality.
    CHECK(std::fabs(b.objective - b.dual_objective(lp)) <=
          1e-6 * (1.0 + std::fabs(b.objective)));
  }
}

TEST_CASE("degenerate LP with two optimal vertices agrees on objective") {
  // min x + y on the square [0,2]^2 with x + y >= 1: the whole facet is
  // optimal; solver and oracle may pick different vertices.
  LinearProgram lp;
  const int x = lp.add_variable(0.0, 2.0, 1.0);
  const int y = lp.add_variable(0.0, 2.0, 1.0);
  lp.add_row({x, y}, {1.0, 1.0}, RowSense::GE, 1.0, "");
  LpSolution sol = solve_lp(lp);
  LpSolution truth = vertex_oracle(lp);
  CHECK(close_rel(sol.objective, truth.objective));
  CHECK(sol.objective == doctest::Approx(1.0));
}

TEST_CASE("determinism: identical inputs give identical output") {
  SplitMix64 rng(0x7777ull);
  LinearProgram lp = random_feasible_lp(rng);
  LpSolution a = solve_lp(lp);
  LpSolution b = solve_lp(lp);
  CHECK(a.primal == b.primal);
  CHECK(a.duals == b.duals);
}

TEST_CASE("strict feasibility probe") {
  LinearProgram lp = three_bus_lp();
  CHECK(strict_feasibility_margin(lp) > 1e-3);

  // Pinned instance: x <= 0 with bound x >= 0 leaves no interior.
  LinearProgram pinned;
  const int x = pinned.add_variable(0.0, 1.0, 1.0);
  pinned.add_row({x}, {1.0}, RowSense::LE, 0.0, "");
  CHECK(strict_feasibility_margin(pinned) <= 1e-9);
}

TEST_CASE("free variables pivot through equality systems") {
  LinearProgram lp;
  const int x = lp.add_variable(-kInf, kInf, 1.0);
  const int y = lp.add_variable(-kInf, kInf, 1.0);
  lp.add_row({x, y}, {1.0, 1.0}, RowSense::EQ, 2.0, "");
  lp.add_row({x, y}, {1.0, -1.0}, RowSense::EQ, 0.0, "");
  LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.primal[0] == doctest::Approx(1.0));
  CHECK(sol.primal[1] == doctest::Approx(1.0));

  LinearProgram lb;
  const int z = lb.add_variable(-kInf, kInf, 1.0);
  lb.add_row({z}, {1.0}, RowSense::GE, 3.0, "");
  LpSolution s2 = solve_lp(lb);
  REQUIRE(s2.status == SolveStatus::Optimal);
  CHECK(s2.primal[0] == doctest::Approx(3.0));
  CHECK(s2.duals[0] == doctest::Approx(1.0));
}

TEST_CASE("a problem with no variables is decided by its constant rows") {
  LinearProgram lp;
  CHECK(solve_lp(lp).status == SolveStatus::Optimal);
  lp.add_row({}, {}, RowSense::GE, 1.0, "");
  CHECK(solve_lp(lp).status == SolveStatus::Infeasible);
}

TEST_CASE("one immutable program is shareable across concurrent solves") {
  SplitMix64 rng(0x4242ull);
  const LinearProgram lp = random_feasible_lp(rng);
  const LpSolution ref = solve_lp(lp);
  std::vector<std::thread> pool;
  std::vector<double> results(8, 0.0);
  for (int w = 0; w < 8; ++w)
    pool.emplace_back([&, w] { results[w] = solve_lp(lp).objective; });
  for (auto& t : pool) t.join();
  for (double r : results) CHECK(r == ref.objective);
}

TEST_CASE("vertex oracle rejects oversized problems") {
  LinearProgram lp;
  for (int j = 0; j < 13; ++j) lp.add_variable(0.0, 1.0, 1.0);
  CHECK_THROWS_AS(vertex_oracle(lp), TooLarge);
}
