#pragma once

#include <cmath>
#include <cstdint>

namespace scenuc {

/// SplitMix64: the documented generator behind every random draw in this
/// library. Streams are derived by hashing (seed, dimension keys), so
/// sampling is order-independent and safe to parallelize.
struct SplitMix64 {
  uint64_t state = 0;

  explicit SplitMix64(uint64_t seed = 0) : state(seed) {}

  uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform on the open interval (0,1), 53-bit resolution, never 0 or 1.
  double uniform_open() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }
};

/// Stream derivation: hash the seed with up to three stream keys.
inline uint64_t derive_stream(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
  SplitMix64 h(seed ^ (a * 0x9E3779B97F4A7C15ull));
  uint64_t s = h.next();
  SplitMix64 h2(s ^ (b * 0xC2B2AE3D27D4EB4Full));
  s = h2.next();
  SplitMix64 h3(s ^ (c * 0x165667B19E3779F9ull));
  return h3.next();
}

/// Standard normal quantile (Wichura's AS241 PPND16 approximation,
/// |relative error| below 1e-15 on (0,1)).
double normal_quantile(double p);

/// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }

/// Exact truncated-normal draw via the inverse CDF: u is mapped into the
/// quantile range [Phi(lo_sigmas), Phi(hi_sigmas)] so no rejection loop is
/// needed and one uniform always yields one sample.
double truncated_normal(double u, double lo_sigmas, double hi_sigmas);

}  // namespace scenuc
