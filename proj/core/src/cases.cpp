#include "scenuc/cases.hpp"

namespace scenuc {

namespace {

DenseMatrix single(double v) {
  DenseMatrix m(1, 1);
  m(0, 0) = v;
  return m;
}

}  // namespace

CaseFile builtin_case3() {
  CaseFile c;
  GridCase& g = c.grid;
  g.name = "case3";
  g.horizon = 1;
  g.slack_bus = 3;
  g.reserve_enabled = false;
  g.commitment_logic_enabled = false;
  g.buses = {1, 2, 3};
  g.lines.push_back({1, 2, 1.0, 20.0, {}});
  g.lines.push_back({1, 3, 1.0, 100.0, {}});
  g.lines.push_back({2, 3, 1.0, 100.0, {}});
  Generator g1;
  g1.bus = 1;
  g1.g_min = 20.0;
  g1.g_max = 100.0;
  g1.cost_energy = 1.0;
  Generator g2;
  g2.bus = 2;
  g2.g_min = 20.0;
  g2.g_max = 90.0;
  g2.cost_energy = 100.0;
  g.generators = {g1, g2};
  g.wind_farms.push_back({2, {30.0}});
  g.loads.push_back({3, {110.0}});

  DistributionSpec spec;
  spec.wind.kind = ErrorKind::Empirical;
  spec.wind.values = {single(6.0), single(-15.0), single(-25.0)};
  spec.load.kind = ErrorKind::Empirical;
  spec.load.values = {single(11.0), single(-30.0), single(-35.0)};
  spec.empirical_mode = EmpiricalMode::Ordered;
  c.distribution = spec;

  ExperimentDefaults e;
  e.n_grid = {5, 10, 20};
  e.trials = 5;
  e.beta = 0.01;
  e.m_oos = 20000;
  e.master_seed = 12345;
  c.experiment = e;
  return c;
}

CaseFile builtin_case6() {
  CaseFile c;
  GridCase& g = c.grid;
  g.name = "case6";
  g.horizon = 4;
  g.slack_bus = 1;
  g.reserve_enabled = true;
  g.commitment_logic_enabled = true;
  g.buses = {1, 2, 3, 4, 5, 6};
  g.lines.push_back({1, 2, 0.20, 120.0, {}});
  g.lines.push_back({1, 4, 0.25, 100.0, {}});
  g.lines.push_back({1, 5, 0.30, 90.0, {}});
  g.lines.push_back({2, 3, 0.25, 100.0, {}});
  g.lines.push_back({2, 4, 0.30, 90.0, {}});
  g.lines.push_back({2, 6, 0.40, 80.0, {}});
  g.lines.push_back({3, 5, 0.26, 90.0, {}});
  g.lines.push_back({4, 6, 0.30, 100.0, {}});

  Generator g1;
  g1.bus = 1;
  g1.g_min = 20.0;
  g1.g_max = 120.0;
  g1.ramp_lo = -50.0;
  g1.ramp_hi = 50.0;
  g1.min_on = 2;
  g1.min_off = 2;
  g1.cost_energy = 12.0;
  g1.cost_no_load = 50.0;
  g1.cost_startup = 120.0;
  g1.cost_shutdown = 40.0;
  g1.cost_reserve = 4.0;
  g1.initial_on = 1;
  g1.initial_output = 70.0;
  Generator g2;
  g2.bus = 2;
  g2.g_min = 15.0;
  g2.g_max = 90.0;
  g2.ramp_lo = -40.0;
  g2.ramp_hi = 40.0;
  g2.min_on = 2;
  g2.min_off = 1;
  g2.cost_energy = 24.0;
  g2.cost_no_load = 40.0;
  g2.cost_startup = 90.0;
  g2.cost_shutdown = 30.0;
  g2.cost_reserve = 6.0;
  g2.initial_on = 1;
  g2.initial_output = 40.0;
  Generator g3;
  g3.bus = 6;
  g3.g_min = 10.0;
  g3.g_max = 60.0;
  g3.ramp_lo = -60.0;
  g3.ramp_hi = 60.0;
  g3.min_on = 1;
  g3.min_off = 1;
  g3.cost_energy = 45.0;
  g3.cost_no_load = 20.0;
  g3.cost_startup = 60.0;
  g3.cost_shutdown = 20.0;
  g3.cost_reserve = 8.0;
  g.generators = {g1, g2, g3};

  g.wind_farms.push_back({4, {25.0, 32.0, 36.0, 30.0}});
  g.loads.push_back({3, {58.0, 66.0, 72.0, 64.0}});
  g.loads.push_back({5, {46.0, 54.0, 60.0, 52.0}});

  g.contingencies.push_back({{0, 1, 1}, 0.0});
  g.contingencies.push_back({{1, 0, 1}, 0.0});

  c.distribution = default_distribution();
  ExperimentDefaults e;
  e.n_grid = {5, 10, 20};
  e.trials = 5;
  e.beta = 0.01;
  e.m_oos = 20000;
  e.master_seed = 777;
  c.experiment = e;
  return c;
}

}  // namespace scenuc
