#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scenuc/common.hpp"
#include "scenuc/dense.hpp"

namespace scenuc {

struct Line {
  int from = 0;
  int to = 0;
  double reactance = 1.0;  // p.u. on the case MVA base
  double capacity = kInf;  // MW flow upper limit
  /// Lower flow limit; defaults to -capacity when not given in the file.
  std::optional<double> capacity_lo;

  double flow_lo() const { return capacity_lo ? *capacity_lo : -capacity; }
};

struct Generator {
  int bus = 0;
  double g_min = 0.0;
  double g_max = 0.0;
  /// Bounds on g[t] - g[t-1] per step; +/-inf disables the row.
  double ramp_lo = -kInf;
  double ramp_hi = kInf;
  int min_on = 1;   // steps
  int min_off = 1;  // steps
  double cost_energy = 0.0;    // $/MWh
  double cost_no_load = 0.0;   // $ per committed step
  double cost_startup = 0.0;   // $ per startup
  double cost_shutdown = 0.0;  // $ per shutdown
  double cost_reserve = 0.0;   // $/MW
  int initial_on = 0;          // commitment state before step 1
  double initial_output = 0.0;
};

struct WindFarm {
  int bus = 0;
  std::vector<double> forecast;  // MW per step
};

struct LoadPoint {
  int bus = 0;
  std::vector<double> forecast;  // MW per step
};

/// One generator-outage state: availability per generator and the weight of
/// its dispatch cost in the objective. The no-outage state (all available)
/// is implicit and always present as contingency index 0.
struct Contingency {
  std::vector<int> availability;
  double weight = 0.0;
};

struct GridCase {
  int schema_version = 1;
  std::string name;
  double mva_base = 100.0;
  int horizon = 1;  // number of time steps
  int slack_bus = 0;
  bool reserve_enabled = true;
  bool commitment_logic_enabled = true;
  double base_case_weight = 1.0;  // dispatch-cost weight of the no-outage state

  std::vector<int> buses;
  std::vector<Line> lines;
  std::vector<Generator> generators;
  std::vector<WindFarm> wind_farms;
  std::vector<LoadPoint> loads;
  std::vector<Contingency> contingencies;

  int n_bus() const { return static_cast<int>(buses.size()); }
  int n_line() const { return static_cast<int>(lines.size()); }
  int n_gen() const { return static_cast<int>(generators.size()); }
  int n_wind() const { return static_cast<int>(wind_farms.size()); }
  int n_load() const { return static_cast<int>(loads.size()); }
  int n_contingency() const { return static_cast<int>(contingencies.size()); }  // outage states
  int n_t() const { return horizon; }

  int bus_index(int bus_id) const;  // position in buses; throws InvalidCase

  /// Availability of generator i in contingency state k (k = 0 is no-outage).
  int availability(int k, int i) const;
  double contingency_weight(int k) const;

  void validate() const;  // throws InvalidCase
};

/// Injection-shift tables for the base topology (generator outages do not
/// change the network, so one table serves every contingency state).
struct PtdfTables {
  DenseMatrix bus_ptdf;  // n_line x n_bus; the slack column is zero
  DenseMatrix h_gen;     // n_line x n_gen
  DenseMatrix h_wind;    // n_line x n_wind
  DenseMatrix h_load;    // n_line x n_load
};

/// DC power-flow shift factors from the susceptance matrix reduced at the
/// slack bus. Throws DisconnectedNetwork / SingularSusceptanceMatrix.
PtdfTables build_ptdf(const GridCase& grid);

}  // namespace scenuc
