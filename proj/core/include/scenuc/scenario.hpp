#pragma once

#include <cstdint>
#include <vector>

#include "scenuc/grid.hpp"

namespace scenuc {

/// One joint forecast-error draw: additive MW errors per source per step.
struct ScenarioRealization {
  DenseMatrix wind_err;  // n_wind x n_t
  DenseMatrix load_err;  // n_load x n_t
};

enum class ErrorKind { Gaussian, Uniform, Empirical };

/// How empirical lists are indexed when drawing: Ordered walks the list
/// (draw i takes entry i mod L, so n == L reproduces the list exactly);
/// Iid draws a uniformly random entry per realization. One entry index is
/// shared by all sources of a realization, preserving the joint pattern.
enum class EmpiricalMode { Ordered, Iid };

struct ErrorModel {
  ErrorKind kind = ErrorKind::Gaussian;

  /// Gaussian: zero mean, sigma = sigma_frac * |forecast| per source/step,
  /// truncated to [lo,hi] sigmas by inverse-CDF restriction (exact, no
  /// rejection). With shared-factor correlation the truncation is applied
  /// by clipping instead.
  double sigma_frac = 0.10;
  double trunc_lo_sigmas = -3.0;
  double trunc_hi_sigmas = 3.0;

  /// Uniform: absolute MW bounds, same for every source/step.
  double uniform_lo_mw = 0.0;
  double uniform_hi_mw = 0.0;

  /// Empirical: values[entry] is an (n_sources x n_t) error table in MW.
  std::vector<DenseMatrix> values;
};

struct DistributionSpec {
  ErrorModel wind;
  ErrorModel load;
  /// Shared-factor coefficient rho in [-1,1]; 0 means independent sources.
  /// Gaussian models only: err = sigma * (rho * z_common + sqrt(1-rho^2) * z_own).
  double shared_factor = 0.0;
  EmpiricalMode empirical_mode = EmpiricalMode::Ordered;

  void validate(const GridCase& grid) const;  // throws InvalidSpec
  uint64_t hash() const;
};

/// Indexed i.i.d. draws; reproducible from (seed, spec): draw i uses the
/// stream derive_stream(seed, i), so sets are prefix-stable in n.
struct ScenarioSet {
  std::vector<ScenarioRealization> draws;
  uint64_t seed = 0;
  uint64_t spec_hash = 0;

  int size() const { return static_cast<int>(draws.size()); }
};

/// One draw from the given stream; draw_index selects the entry for
/// ordered-empirical models and is otherwise ignored.
ScenarioRealization sample_one(const DistributionSpec& spec, const GridCase& grid,
                               uint64_t stream_seed, int draw_index = 0);

ScenarioSet sample_scenarios(const DistributionSpec& spec, const GridCase& grid, int n,
                             uint64_t seed);

/// The default error model when a case file carries no distribution block:
/// independent zero-mean Gaussians, sigma 10% of forecast, truncated at
/// +/-3 sigma. All reported numbers depend on this choice.
DistributionSpec default_distribution();

}  // namespace scenuc
