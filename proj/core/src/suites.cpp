#include "scenuc/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "scenuc/cases.hpp"
#include "scenuc/exact_tail.hpp"
#include "scenuc/io.hpp"
#include "scenuc/oracles.hpp"
#include "scenuc/random_problems.hpp"
#include "scenuc/theory.hpp"

namespace scenuc {

namespace {

bool close_rel(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * (1.0 + std::fabs(a));
}

void check(SuiteReport& rep, bool ok, const std::string& what, const std::string& detail = {}) {
  rep.lines.push_back(std::string(ok ? "pass: " : "FAIL: ") + what);
  if (!ok && rep.pass) {
    rep.pass = false;
    rep.failure_detail = detail.empty() ? what : detail;
  }
}

std::string dump_lp(const LinearProgram& lp) {
  MixedIntegerProgram mip;
  mip.relaxation = lp;
  return model_row_listing(mip);
}

std::vector<int> iota_vec(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

SuiteReport run_suite_lp() {
  SuiteReport rep;
  rep.name = "lp";
  SplitMix64 rng(0xC0FFEE01ull);
  int oracle_hits = 0, duality_hits = 0, mono_hits = 0;
  for (int it = 0; it < 200 && rep.pass; ++it) {
    LinearProgram lp = random_feasible_lp(rng);
    LpSolution sol = solve_lp(lp);
    LpSolution truth = vertex_oracle(lp);
    if (!(sol.status == SolveStatus::Optimal && truth.status == SolveStatus::Optimal &&
          close_rel(sol.objective, truth.objective, 1e-7))) {
      std::ostringstream ss;
      ss << "instance " << it << ": solver " << sol.objective << " oracle " << truth.objective
         << "\n"
         << dump_lp(lp);
      check(rep, false, "solve_lp vs vertex_oracle", ss.str());
      break;
    }
    ++oracle_hits;
    if (!close_rel(sol.objective, sol.dual_objective(lp), 1e-7)) {
      check(rep, false, "strong duality", "instance " + std::to_string(it) + "\n" + dump_lp(lp));
      break;
    }
    ++duality_hits;
    if (lp.num_rows() > 0) {
      LinearProgram reduced = lp;
      reduced.rows.erase(reduced.rows.begin() +
                         static_cast<long>(rng.next() % reduced.rows.size()));
      LpSolution rsol = solve_lp(reduced);
      if (!(rsol.status == SolveStatus::Optimal &&
            rsol.objective <= sol.objective + 1e-9 * (1.0 + std::fabs(sol.objective)))) {
        check(rep, false, "row-deletion monotonicity",
              "instance " + std::to_string(it) + "\n" + dump_lp(lp));
        break;
      }
      ++mono_hits;
    }
  }
  if (rep.pass) {
    check(rep, oracle_hits == 200, "200/200 vertex-oracle agreements");
    check(rep, duality_hits == 200, "200/200 strong-duality checks");
    check(rep, mono_hits > 150, "row-deletion monotonicity batch");
  }
  return rep;
}

SuiteReport run_suite_milp() {
  SuiteReport rep;
  rep.name = "milp";
  SplitMix64 rng(0xC0FFEE02ull);
  int agree = 0;
  for (int it = 0; it < 100 && rep.pass; ++it) {
    MixedIntegerProgram mip = random_feasible_milp(rng);
    MilpSolution a = solve_milp(mip);
    MilpSolution b = binary_enumeration_oracle(mip);
    const bool both_opt = a.status == MilpStatus::Optimal && b.status == MilpStatus::Optimal;
    if (!(both_opt && close_rel(a.objective, b.objective, 1e-7))) {
      std::ostringstream ss;
      ss << "instance " << it << ": bnb " << a.objective << " oracle " << b.objective << "\n"
         << model_row_listing(mip);
      check(rep, false, "solve_milp vs binary_enumeration_oracle", ss.str());
      break;
    }
    MilpSolution again = solve_milp(mip);
    if (again.primal != a.primal) {
      check(rep, false, "determinism of repeated solves", "instance " + std::to_string(it));
      break;
    }
    ++agree;
  }
  if (rep.pass) check(rep, agree == 100, "100/100 enumeration-oracle agreements");

  // Monotone-solve contract on random scenario problems and random subsets.
  int mono = 0;
  for (int it = 0; it < 25 && rep.pass; ++it) {
    MilpScenarioOracle oracle = random_scenario_problem(rng, 6, /*with_binaries=*/true);
    OracleSolveResult full = oracle.solve_subset(iota_vec(6), nullptr);
    std::vector<int> subset;
    for (int s = 0; s < 6; ++s)
      if (rng.next() % 2) subset.push_back(s);
    OracleSolveResult sub = oracle.solve_subset(subset, &full);
    if (!(sub.status == MilpStatus::Optimal &&
          sub.objective <= full.objective + 1e-9 * (1.0 + std::fabs(full.objective)))) {
      check(rep, false, "warm-started subset monotonicity", "instance " + std::to_string(it));
      break;
    }
    ++mono;
  }
  if (rep.pass) check(rep, mono == 25, "25/25 warm-start monotonicity checks");
  return rep;
}

SuiteReport run_suite_sets() {
  SuiteReport rep;
  rep.name = "sets";

  // The 3-bus degenerate instance end to end.
  {
    CaseFile c3 = builtin_case3();
    ScenarioSet table = sample_scenarios(*c3.distribution, c3.grid, 3, 1);
    ScucScenarioProblem problem(c3.grid, table);
    ReductionResult support = support_set_by_removal(problem);
    check(rep, support.indices == std::vector<int>{0}, "case3 support set = {scenario 1}");
    OracleSolveResult full = problem.solve_subset(iota_vec(3), nullptr);
    OracleSolveResult only_support = problem.solve_subset(support.indices, &full);
    check(rep, problem.equality().strictly_below(only_support.objective, full.objective),
          "case3 opt(SP(support)) < opt(SP(N))");
    check(rep, is_degenerate(problem) == Degeneracy::Degenerate, "case3 is degenerate");
    ReductionResult alg4 = two_stage_essential(problem);
    check(rep,
          alg4.kind == ReductionKind::Irreducible && alg4.degenerate == Degeneracy::Degenerate,
          "case3 two-stage reduction falls back to an irreducible set");
    check(rep, alg4.indices.size() == 2, "case3 irreducible set has size 2");
    auto essentials = brute_force_essential_sets(problem);
    bool all_contain_1 = essentials.size() >= 2;
    for (const auto& e : essentials)
      all_contain_1 = all_contain_1 && e.size() == 2 &&
                      std::find(e.begin(), e.end(), 0) != e.end();
    check(rep, all_contain_1, "case3 essential sets: several, size 2, all contain scenario 1");
  }

  // Algorithm agreement and structural properties on random convex families.
  SplitMix64 rng(0xC0FFEE03ull);
  int agree = 0;
  for (int it = 0; it < 25 && rep.pass; ++it) {
    MilpScenarioOracle oracle = random_scenario_problem(rng, 6, /*with_binaries=*/false);
    OracleSolveResult full = oracle.solve_subset(iota_vec(6), nullptr);
    ScenarioLp family = oracle.second_stage(full);
    ReductionResult dual_based = support_set_via_duals(family, oracle.equality());
    ReductionResult removal = support_set_by_removal(oracle);
    if (dual_based.indices != removal.indices) {
      check(rep, false, "Algorithm-1/Algorithm-2 agreement", "instance " + std::to_string(it));
      break;
    }
    ReductionResult irr = irreducible_set(oracle);
    const bool support_subset =
        std::includes(irr.indices.begin(), irr.indices.end(), removal.indices.begin(),
                      removal.indices.end());
    if (!support_subset) {
      check(rep, false, "support contained in irreducible set", "instance " + std::to_string(it));
      break;
    }
    ++agree;
  }
  if (rep.pass) check(rep, agree == 25, "25/25 dual-screen vs removal agreements");

  // Non-degenerate uniqueness against the brute-force enumeration.
  int consistent = 0;
  for (int it = 0; it < 15 && rep.pass; ++it) {
    MilpScenarioOracle oracle = random_scenario_problem(rng, 5, /*with_binaries=*/true);
    auto essentials = brute_force_essential_sets(oracle);
    ReductionResult support = support_set_by_removal(oracle);
    const Degeneracy deg = is_degenerate(oracle);
    bool ok = true;
    if (deg == Degeneracy::NonDegenerate)
      ok = essentials.size() == 1 && essentials[0] == support.indices;
    else if (deg == Degeneracy::Degenerate)
      ok = essentials.size() >= 2;
    if (!ok) {
      check(rep, false, "degeneracy vs essential-set multiplicity",
            "instance " + std::to_string(it));
      break;
    }
    ++consistent;
  }
  if (rep.pass) check(rep, consistent == 15, "15/15 degeneracy/enumeration consistency checks");
  return rep;
}

SuiteReport run_suite_theory() {
  SuiteReport rep;
  rep.name = "theory";

  check(rep, epsilon_posterior(100, 100, 0.01) == 1.0, "epsilon(N,N,beta) = 1");
  check(rep, close_rel(epsilon_posterior(10, 0, 0.1), 1.0 - std::pow(0.01, 0.1), 1e-12),
        "epsilon(10,0,0.1) closed form");
  check(rep, close_rel(epsilon_posterior(2, 1, 0.5), 0.875, 1e-12), "epsilon(2,1,0.5) = 0.875");

  // Monotonicity grid (the acceptance suite runs the larger grid).
  const double betas[] = {1e-6, 1e-3, 0.1, 0.5};
  bool mono = true;
  for (int n = 2; n <= 200 && mono; ++n)
    for (double beta : betas) {
      for (int k = 0; k < n; ++k)
        mono = mono && epsilon_posterior(n, k, beta) <= epsilon_posterior(n, k + 1, beta);
      for (int k = 0; k <= n; ++k)
        mono = mono && epsilon_posterior(n + 1, k, beta) <= epsilon_posterior(n, k, beta);
    }
  for (int n = 2; n <= 200 && mono; ++n)
    for (int k = 0; k <= n; ++k)
      for (size_t b = 0; b + 1 < 4; ++b)
        mono = mono && epsilon_posterior(n, k, betas[b]) >= epsilon_posterior(n, k, betas[b + 1]);
  check(rep, mono, "epsilon monotone in beta, k, N on the suite grid");

  // Exact-tail cross-check and the closed-form sample complexity.
  const std::pair<int, int> eps_fracs[] = {{1, 100}, {5, 100}, {1, 10}, {1, 2}};
  bool tail_ok = true;
  for (int n = 1; n <= 30 && tail_ok; ++n)
    for (const auto& [num, den] : eps_fracs) {
      const Rational eps_rat(num, den);
      const double eps = static_cast<double>(num) / den;
      for (int h = 0; h <= n; ++h) {
        const double exact = static_cast<double>(exact_binomial_tail(n, h, eps_rat));
        if (std::fabs(binomial_tail(n, h, eps) - exact) > 1e-12) tail_ok = false;
      }
    }
  check(rep, tail_ok, "binomial tail matches exact rational arithmetic (N <= 30)");

  check(rep, sample_complexity_convex({0.05, 0.01, 1}) == 90, "N(0.05, 0.01, h=1) = 90");
  check(rep,
        sample_complexity_convex({0.05, 0.01, 1}) ==
            static_cast<int>(std::ceil(std::log(0.01) / std::log(0.95))),
        "h=1 closed form");
  check(rep, sample_complexity_convex({0.5, 0.5, 1}) == 1, "N(0.5, 0.5, h=1) = 1");

  bool prior_ok = true;
  for (double eps : {0.05, 0.1, 0.3})
    for (double beta : {1e-3, 0.01})
      for (int h : {0, 1, 3, 8}) {
        const int n = prior_sample_size(eps, beta, h);
        prior_ok = prior_ok && epsilon_posterior(n, h, beta) <= eps &&
                   (n == h + 1 || epsilon_posterior(n - 1, h, beta) > eps);
      }
  check(rep, prior_ok, "prior sample size is the exact boundary");
  return rep;
}

SuiteReport run_suite(const std::string& name) {
  if (name == "lp") return run_suite_lp();
  if (name == "milp") return run_suite_milp();
  if (name == "sets") return run_suite_sets();
  if (name == "theory") return run_suite_theory();
  throw DomainError("unknown suite: " + name + " (expected lp|milp|sets|theory)");
}

}  // namespace scenuc
