#pragma once

#include <string>
#include <vector>

namespace scenuc {

struct SuiteReport {
  std::string name;
  bool pass = true;
  std::vector<std::string> lines;     // one entry per executed check
  std::string failure_detail;         // first diverging instance, dumped
};

/// Cross-validation batches behind `oracle-check`: each suite replays the
/// derived-oracle comparisons with fixed seeds.
SuiteReport run_suite_lp();
SuiteReport run_suite_milp();
SuiteReport run_suite_sets();
SuiteReport run_suite_theory();

/// name in {lp, milp, sets, theory}; throws DomainError otherwise.
SuiteReport run_suite(const std::string& name);

}  // namespace scenuc
