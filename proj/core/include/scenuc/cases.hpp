#pragma once

#include "scenuc/io.hpp"

namespace scenuc {

/// The 3-bus illustration case: two generators with a 100:1 marginal-cost
/// ratio, one wind farm, one load, a 20 MW tie line, and three listed
/// forecast-error scenarios. The canonical degenerate instance.
CaseFile builtin_case3();

/// A 6-bus, 3-generator, 4-step case with reserves, commitment logic,
/// minimum on/off times and two generator-outage contingencies.
CaseFile builtin_case6();

}  // namespace scenuc
