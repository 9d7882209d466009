#include <algorithm>
#include <cmath>
#include <cstring>

#include "scenuc/rng.hpp"
#include "scenuc/scenario.hpp"

namespace scenuc {

namespace {

void validate_model(const ErrorModel& m, int n_sources, int n_t, const char* what) {
  switch (m.kind) {
    case ErrorKind::Gaussian:
      if (m.sigma_frac < 0.0) throw InvalidSpec(std::string(what) + ": sigma_frac < 0");
      if (!(m.trunc_lo_sigmas < m.trunc_hi_sigmas))
        throw InvalidSpec(std::string(what) + ": empty truncation range");
      break;
    case ErrorKind::Uniform:
      if (!(m.uniform_lo_mw <= m.uniform_hi_mw))
        throw InvalidSpec(std::string(what) + ": crossed uniform bounds");
      break;
    case ErrorKind::Empirical:
      if (m.values.empty()) throw InvalidSpec(std::string(what) + ": empty empirical list");
      for (const DenseMatrix& t : m.values)
        if (t.rows() != n_sources || t.cols() != n_t)
          throw InvalidSpec(std::string(what) + ": empirical table shape mismatch");
      break;
  }
}

uint64_t hash_double(uint64_t h, double v) {
  uint64_t bits;
  static_assert(sizeof(bits) == sizeof(v));
  std::memcpy(&bits, &v, sizeof(bits));
  return derive_stream(h, bits, 0x6a09e667f3bcc909ull);
}

// Draws one source class (wind or load) into `out`, consuming uniforms from
// the stream in a fixed documented order: sources outer, steps inner.
void draw_block(const ErrorModel& m, const std::vector<double>* common,  // per t, or null
                const DenseMatrix& forecasts, double rho, int entry_index,
                SplitMix64& stream, DenseMatrix& out) {
  const int ns = forecasts.rows(), nt = forecasts.cols();
  out = DenseMatrix(ns, nt);
  switch (m.kind) {
    case ErrorKind::Gaussian: {
      const double mix = std::sqrt(std::max(0.0, 1.0 - rho * rho));
      for (int s = 0; s < ns; ++s)
        for (int t = 0; t < nt; ++t) {
          const double sigma = m.sigma_frac * std::fabs(forecasts(s, t));
          if (sigma == 0.0) continue;
          double z;
          if (common) {
            z = rho * (*common)[t] + mix * normal_quantile(stream.uniform_open());
            z = std::clamp(z, m.trunc_lo_sigmas, m.trunc_hi_sigmas);
          } else {
            z = truncated_normal(stream.uniform_open(), m.trunc_lo_sigmas, m.trunc_hi_sigmas);
          }
          out(s, t) = sigma * z;
        }
      break;
    }
    case ErrorKind::Uniform: {
      for (int s = 0; s < ns; ++s)
        for (int t = 0; t < nt; ++t)
          out(s, t) =
              m.uniform_lo_mw + stream.uniform_open() * (m.uniform_hi_mw - m.uniform_lo_mw);
      break;
    }
    case ErrorKind::Empirical: {
      const DenseMatrix& tab = m.values[entry_index % m.values.size()];
      out = tab;
      break;
    }
  }
}

DenseMatrix forecast_table_wind(const GridCase& grid) {
  DenseMatrix f(grid.n_wind(), grid.n_t());
  for (int s = 0; s < grid.n_wind(); ++s)
    for (int t = 0; t < grid.n_t(); ++t) f(s, t) = grid.wind_farms[s].forecast[t];
  return f;
}

DenseMatrix forecast_table_load(const GridCase& grid) {
  DenseMatrix f(grid.n_load(), grid.n_t());
  for (int s = 0; s < grid.n_load(); ++s)
    for (int t = 0; t < grid.n_t(); ++t) f(s, t) = grid.loads[s].forecast[t];
  return f;
}

}  // namespace

void DistributionSpec::validate(const GridCase& grid) const {
  validate_model(wind, grid.n_wind(), grid.n_t(), "wind model");
  validate_model(load, grid.n_load(), grid.n_t(), "load model");
  if (shared_factor < -1.0 || shared_factor > 1.0)
    throw InvalidSpec("shared_factor must lie in [-1,1]");
  if (shared_factor != 0.0 &&
      (wind.kind != ErrorKind::Gaussian || load.kind != ErrorKind::Gaussian))
    throw InvalidSpec("shared-factor correlation requires Gaussian models");
  if (wind.kind == ErrorKind::Empirical && load.kind == ErrorKind::Empirical &&
      wind.values.size() != load.values.size())
    throw InvalidSpec("empirical lists must pair up: unequal lengths");
}

uint64_t DistributionSpec::hash() const {
  uint64_t h = 0x243f6a8885a308d3ull;
  auto mix_model = [&h](const ErrorModel& m) {
    h = derive_stream(h, static_cast<uint64_t>(m.kind) + 1);
    h = hash_double(h, m.sigma_frac);
    h = hash_double(h, m.trunc_lo_sigmas);
    h = hash_double(h, m.trunc_hi_sigmas);
    h = hash_double(h, m.uniform_lo_mw);
    h = hash_double(h, m.uniform_hi_mw);
    h = derive_stream(h, m.values.size());
    for (const DenseMatrix& t : m.values)
      for (int r = 0; r < t.rows(); ++r)
        for (int c = 0; c < t.cols(); ++c) h = hash_double(h, t(r, c));
  };
  mix_model(wind);
  mix_model(load);
  h = hash_double(h, shared_factor);
  h = derive_stream(h, static_cast<uint64_t>(empirical_mode));
  return h;
}

ScenarioRealization sample_one(const DistributionSpec& spec, const GridCase& grid,
                               uint64_t stream_seed, int draw_index) {
  SplitMix64 stream(stream_seed);
  ScenarioRealization out;

  // Common factor per step, drawn first when correlation is active.
  std::vector<double> common;
  const double rho = spec.shared_factor;
  if (rho != 0.0) {
    common.resize(grid.n_t());
    for (double& z : common) z = normal_quantile(stream.uniform_open());
  }

  // Empirical entry index: Ordered walks the list by draw number, Iid
  // consumes one word from the stream. Shared by both source classes.
  int entry = draw_index;
  if (spec.empirical_mode == EmpiricalMode::Iid &&
      (spec.wind.kind == ErrorKind::Empirical || spec.load.kind == ErrorKind::Empirical)) {
    const size_t len = std::max(
        spec.wind.kind == ErrorKind::Empirical ? spec.wind.values.size() : size_t{1},
        spec.load.kind == ErrorKind::Empirical ? spec.load.values.size() : size_t{1});
    entry = static_cast<int>(stream.next() % len);
  }

  const DenseMatrix fw = forecast_table_wind(grid);
  const DenseMatrix fd = forecast_table_load(grid);
  draw_block(spec.wind, rho != 0.0 ? &common : nullptr, fw, rho, entry, stream, out.wind_err);
  draw_block(spec.load, rho != 0.0 ? &common : nullptr, fd, rho, entry, stream, out.load_err);
  return out;
}

ScenarioSet sample_scenarios(const DistributionSpec& spec, const GridCase& grid, int n,
                             uint64_t seed) {
  if (n < 0) throw InvalidSpec("scenario count must be >= 0");
  spec.validate(grid);
  ScenarioSet set;
  set.seed = seed;
  set.spec_hash = spec.hash();
  set.draws.reserve(n);
  for (int i = 0; i < n; ++i)
    set.draws.push_back(sample_one(spec, grid, derive_stream(seed, static_cast<uint64_t>(i)), i));
  return set;
}

DistributionSpec default_distribution() {
  DistributionSpec spec;
  spec.wind.kind = ErrorKind::Gaussian;
  spec.wind.sigma_frac = 0.10;
  spec.load.kind = ErrorKind::Gaussian;
  spec.load.sigma_frac = 0.10;
  return spec;
}

}  // namespace scenuc
