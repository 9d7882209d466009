#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "scenuc/stochastic.hpp"
#include "scenuc/theory.hpp"

namespace scenuc {

inline constexpr const char* kToolName = "scenuc";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kCaseSchemaVersion = 1;
inline constexpr int kReportSchemaVersion = 1;

/// Experiment defaults optionally bundled with a case file.
struct ExperimentDefaults {
  std::vector<int> n_grid{100, 200, 500};
  int trials = 10;
  double beta = 0.01;
  long m_oos = 100000;
  uint64_t master_seed = 1;
};

/// Full case document: the grid, an optional error distribution (the
/// documented Gaussian default applies when absent) and experiment
/// defaults. Round-trips losslessly through JSON.
struct CaseFile {
  GridCase grid;
  std::optional<DistributionSpec> distribution;
  std::optional<ExperimentDefaults> experiment;

  DistributionSpec distribution_or_default() const {
    return distribution ? *distribution : default_distribution();
  }
};

// Infinite bounds are written as the strings "inf"/"-inf"; numeric values
// with |x| >= 1e30 are also read as infinite.
nlohmann::json case_to_json(const CaseFile& c);
CaseFile case_from_json(const nlohmann::json& j);
CaseFile load_case_file(const std::string& path);  // throws ParseError
void save_case_file(const CaseFile& c, const std::string& path);

nlohmann::json distribution_to_json(const DistributionSpec& spec);
DistributionSpec distribution_from_json(const nlohmann::json& j);

nlohmann::json scenario_set_to_json(const ScenarioSet& set);
ScenarioSet scenario_set_from_json(const nlohmann::json& j);

nlohmann::json solution_to_json(const UcSolution& sol);
/// Scenario indices are reported 1-based to match case-file scenario
/// numbering; internal APIs use 0-based positions.
nlohmann::json reduction_to_json(const ReductionResult& red);
nlohmann::json certificate_to_json(const EpsilonCertificate& cert);

struct RunManifest {
  std::string command;
  uint64_t config_hash = 0;
  uint64_t master_seed = 0;
  std::string created_utc;  // informational, not covered by determinism
};
nlohmann::json manifest_to_json(const RunManifest& m);
RunManifest make_manifest(const std::string& command, const std::string& config_text,
                          uint64_t master_seed);

/// Deterministic per-trial table: fixed, versioned column set; no wall-clock
/// columns, so a rerun from the same manifest is byte-identical.
std::string experiment_csv(const ExperimentReport& rep);
/// Summary with per-N aggregates; timing lives here, marked informational.
nlohmann::json experiment_summary_json(const ExperimentReport& rep);

uint64_t fnv1a(const std::string& text);
std::string format_double(double v);  // shortest round-trip decimal
std::string utc_timestamp();

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Plain-text listing of a built model (one row per line with group tag),
/// the optional debug export.
std::string model_row_listing(const MixedIntegerProgram& mip);

}  // namespace scenuc
