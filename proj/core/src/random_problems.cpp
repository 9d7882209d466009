#include "scenuc/random_problems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scenuc/scuc.hpp"

namespace scenuc {

namespace {

double uniform(SplitMix64& rng, double lo, double hi) {
  return lo + rng.uniform_open() * (hi - lo);
}

int uniform_int(SplitMix64& rng, int lo, int hi) {  // inclusive
  return lo + static_cast<int>(rng.next() % static_cast<uint64_t>(hi - lo + 1));
}

// Random sparse row over the given variable range, guaranteed nonempty.
Constraint random_row(SplitMix64& rng, int var_lo, int var_hi, const std::vector<double>& x0,
                      bool allow_equalities, const char* group) {
  Constraint c;
  const int span = var_hi - var_lo + 1;
  const int nnz = uniform_int(rng, 1, std::min(span, 4));
  std::vector<int> vars;
  for (int v = var_lo; v <= var_hi; ++v) vars.push_back(v);
  for (int k = 0; k < nnz; ++k) {
    const int pick = uniform_int(rng, k, span - 1);
    std::swap(vars[k], vars[pick]);
  }
  double act = 0.0;
  for (int k = 0; k < nnz; ++k) {
    double coef = uniform(rng, -2.0, 2.0);
    if (std::fabs(coef) < 0.1) coef = coef < 0 ? -0.1 : 0.1;
    c.idx.push_back(vars[k]);
    c.coef.push_back(coef);
    act += coef * x0[vars[k]];
  }
  const int kind = uniform_int(rng, 0, allow_equalities ? 9 : 8);
  if (kind == 9) {
    c.sense = RowSense::EQ;
    c.rhs = act;
  } else if (kind % 2 == 0) {
    c.sense = RowSense::LE;
    c.rhs = act + uniform(rng, 0.2, 3.0);
  } else {
    c.sense = RowSense::GE;
    c.rhs = act - uniform(rng, 0.2, 3.0);
  }
  c.group = group;
  return c;
}

}  // namespace

LinearProgram random_feasible_lp(SplitMix64& rng, int max_vars, bool allow_equalities) {
  const int n = uniform_int(rng, 2, std::min(max_vars, 8));
  LinearProgram lp;
  std::vector<double> x0(n);
  for (int j = 0; j < n; ++j) {
    const double lo = uniform(rng, -8.0, 0.0);
    const double hi = lo + uniform(rng, 1.0, 10.0);
    lp.add_variable(lo, hi, uniform(rng, -3.0, 3.0));
    x0[j] = lo + uniform(rng, 0.15, 0.85) * (hi - lo);
  }
  const int max_rows = std::max(2, 12 - n);  // keeps the vertex oracle cheap
  const int m = uniform_int(rng, 1, max_rows);
  for (int r = 0; r < m; ++r) lp.add_row(random_row(rng, 0, n - 1, x0, allow_equalities, "row"));
  return lp;
}

MixedIntegerProgram random_feasible_milp(SplitMix64& rng, int max_binaries, int max_cont) {
  const int nb = uniform_int(rng, 1, std::max(1, max_binaries));
  const int nc = uniform_int(rng, 1, std::max(1, max_cont));
  MixedIntegerProgram mip;
  LinearProgram& lp = mip.relaxation;
  std::vector<double> x0(nb + nc);
  for (int j = 0; j < nb; ++j) {
    lp.add_variable(0.0, 1.0, uniform(rng, -3.0, 3.0));
    mip.binary_mask.push_back(j);
    x0[j] = uniform_int(rng, 0, 1);
  }
  for (int j = nb; j < nb + nc; ++j) {
    const double lo = uniform(rng, -6.0, 0.0);
    const double hi = lo + uniform(rng, 1.0, 8.0);
    lp.add_variable(lo, hi, uniform(rng, -3.0, 3.0));
    x0[j] = lo + uniform(rng, 0.15, 0.85) * (hi - lo);
  }
  const int m = uniform_int(rng, 2, 8);
  for (int r = 0; r < m; ++r)
    lp.add_row(random_row(rng, 0, nb + nc - 1, x0, false, "row"));
  return mip;
}

MilpScenarioOracle random_scenario_problem(SplitMix64& rng, int n_scenarios, bool with_binaries,
                                           ObjectiveEquality eq) {
  const int nb = with_binaries ? uniform_int(rng, 1, 3) : 0;
  const int nc = uniform_int(rng, 2, 4);
  MixedIntegerProgram mip;
  LinearProgram& lp = mip.relaxation;
  std::vector<double> x0(nb + nc);
  for (int j = 0; j < nb; ++j) {
    lp.add_variable(0.0, 1.0, uniform(rng, -2.0, 2.0));
    mip.binary_mask.push_back(j);
    x0[j] = uniform_int(rng, 0, 1);
  }
  for (int j = nb; j < nb + nc; ++j) {
    const double lo = uniform(rng, -5.0, 0.0);
    const double hi = lo + uniform(rng, 2.0, 8.0);
    lp.add_variable(lo, hi, uniform(rng, 0.2, 3.0));  // positive-ish costs: scenarios bind below
    x0[j] = lo + uniform(rng, 0.2, 0.8) * (hi - lo);
  }
  std::vector<int> row_scenario;
  const int base_rows = uniform_int(rng, 1, 3);
  for (int r = 0; r < base_rows; ++r) {
    lp.add_row(random_row(rng, 0, nb + nc - 1, x0, false, "base"));
    row_scenario.push_back(-1);
  }
  // Scenario rows constrain only the continuous block (uncertainty lives in
  // the second stage).
  for (int s = 0; s < n_scenarios; ++s) {
    const int rows = uniform_int(rng, 1, 2);
    for (int r = 0; r < rows; ++r) {
      Constraint c = random_row(rng, nb, nb + nc - 1, x0, false, "scen");
      c.group = "scen" + std::to_string(s + 1);
      lp.add_row(std::move(c));
      row_scenario.push_back(s);
    }
  }
  return MilpScenarioOracle(std::move(mip), std::move(row_scenario), n_scenarios, {}, eq);
}

MilpScenarioOracle random_scuc_scenario_problem(SplitMix64& rng, int n_scenarios,
                                                ObjectiveEquality eq) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    const double wind0 = uniform(rng, 20.0, 40.0);
    const double load0 = uniform(rng, 95.0, 125.0);

    std::vector<double> werr(n_scenarios), derr(n_scenarios);
    double net_max = load0 - wind0;
    std::vector<double> winds{wind0};
    for (int s = 0; s < n_scenarios; ++s) {
      werr[s] = uniform(rng, -0.85 * wind0, 0.25 * wind0);
      derr[s] = uniform(rng, -0.30 * load0, 0.15 * load0);
      net_max = std::max(net_max, load0 + derr[s] - wind0 - werr[s]);
      winds.push_back(wind0 + werr[s]);
    }
    std::sort(winds.begin(), winds.end());

    // Tie-line capacity placed so that the two lowest-wind states both cap
    // the single-generator dispatch below the peak net load: each blocker
    // is then redundant, the pattern behind degenerate instances. Half the
    // draws get a free capacity instead.
    double cap12;
    if (rng.next() % 2 == 0 && winds.size() >= 2) {
      cap12 = (net_max - winds[1] - uniform(rng, 1.0, 10.0)) / 3.0;
    } else {
      cap12 = uniform(rng, 14.0, 34.0);
    }
    if (cap12 < 4.0) continue;

    GridCase g;
    g.horizon = 1;
    g.slack_bus = 3;
    g.reserve_enabled = false;
    g.commitment_logic_enabled = false;
    g.buses = {1, 2, 3};
    g.lines.push_back({1, 2, 1.0, cap12, {}});
    g.lines.push_back({1, 3, 1.0, uniform(rng, 90.0, 130.0), {}});
    g.lines.push_back({2, 3, 1.0, uniform(rng, 90.0, 130.0), {}});
    Generator g1;
    g1.bus = 1;
    g1.g_min = uniform(rng, 10.0, 25.0);
    g1.g_max = net_max + uniform(rng, 3.0, 25.0);  // cheap-only serves the peak
    g1.cost_energy = uniform(rng, 1.0, 4.0);
    Generator g2;
    g2.bus = 2;
    g2.g_min = uniform(rng, 10.0, 25.0);
    g2.g_max = uniform(rng, 80.0, 100.0);
    g2.cost_energy = uniform(rng, 40.0, 140.0);
    g.generators = {g1, g2};
    g.wind_farms.push_back({2, {wind0}});
    g.loads.push_back({3, {load0}});

    ScenarioSet set;
    for (int s = 0; s < n_scenarios; ++s) {
      ScenarioRealization draw;
      draw.wind_err = DenseMatrix(1, 1);
      draw.load_err = DenseMatrix(1, 1);
      draw.wind_err(0, 0) = werr[s];
      draw.load_err(0, 0) = derr[s];
      set.draws.push_back(std::move(draw));
    }

    ScucScenarioProblem problem(std::move(g), std::move(set), {}, eq);
    std::vector<int> all(n_scenarios);
    std::iota(all.begin(), all.end(), 0);
    if (problem.solve_subset(all, nullptr).status == MilpStatus::Optimal)
      return problem.model();
  }
  throw NumericalFailure("could not draw a feasible commitment instance");
}

}  // namespace scenuc
