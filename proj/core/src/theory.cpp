#include "scenuc/theory.hpp"

#include <cmath>

#include "scenuc/common.hpp"

namespace scenuc {

namespace {

double ln_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

void check_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("beta must lie in (0,1)");
}

}  // namespace

double epsilon_posterior(int n, int k, double beta) {
  if (n < 1) throw DomainError("epsilon_posterior: n must be >= 1");
  if (k < 0 || k > n) throw DomainError("epsilon_posterior: k must lie in [0,n]");
  check_beta(beta);
  if (k == n) return 1.0;
  const double ln_arg = std::log(beta) - std::log(static_cast<double>(n)) - ln_choose(n, k);
  return 1.0 - std::exp(ln_arg / static_cast<double>(n - k));
}

double binomial_tail(int n, int h, double eps) {
  if (n < 1) throw DomainError("binomial_tail: n must be >= 1");
  if (h < 0 || h > n) throw DomainError("binomial_tail: h must lie in [0,n]");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("binomial_tail: eps must lie in (0,1)");
  const double ln_eps = std::log(eps);
  const double ln_1m = std::log1p(-eps);
  double sum = 0.0, comp = 0.0;  // Kahan
  for (int i = 0; i < h; ++i) {
    const double term = std::exp(ln_choose(n, i) + i * ln_eps + (n - i) * ln_1m);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  if (sum < 0.0) return 0.0;
  if (sum > 1.0) return 1.0;
  return sum;
}

int sample_complexity_convex(const ComplexityQuery& q) {
  if (q.helly_h < 1) throw DomainError("sample_complexity_convex: h must be >= 1");
  if (!(q.epsilon > 0.0 && q.epsilon < 1.0)) throw DomainError("epsilon must lie in (0,1)");
  check_beta(q.beta);
  const int n0 = q.helly_h;
  int hi = n0;
  while (binomial_tail(hi, q.helly_h, q.epsilon) > q.beta) {
    if (hi > (1 << 28)) throw NumericalFailure("sample complexity search diverged");
    hi *= 2;
  }
  int lo = hi == n0 ? n0 : hi / 2;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (binomial_tail(mid, q.helly_h, q.epsilon) <= q.beta)
      hi = mid;
    else
      lo = mid + 1;
  }
  // Pin the boundary against local float wobble.
  while (hi > n0 && binomial_tail(hi - 1, q.helly_h, q.epsilon) <= q.beta) --hi;
  while (binomial_tail(hi, q.helly_h, q.epsilon) > q.beta) ++hi;
  return hi;
}

int prior_sample_size(double eps, double beta, int h) {
  if (h < 0) throw DomainError("prior_sample_size: h must be >= 0");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("epsilon must lie in (0,1)");
  check_beta(beta);
  const int n0 = h + 1;  // epsilon_posterior(h, h, .) == 1 can never satisfy eps < 1
  int hi = n0;
  while (epsilon_posterior(hi, h, beta) > eps) {
    if (hi > (1 << 28)) throw NumericalFailure("prior sample size search diverged");
    hi *= 2;
  }
  int lo = hi == n0 ? n0 : hi / 2;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (epsilon_posterior(mid, h, beta) <= eps)
      hi = mid;
    else
      lo = mid + 1;
  }
  while (hi > n0 && epsilon_posterior(hi - 1, h, beta) <= eps) --hi;
  while (epsilon_posterior(hi, h, beta) > eps) ++hi;
  return hi;
}

EpsilonCertificate certify(int n, int invariant_set_size, double beta) {
  EpsilonCertificate cert;
  cert.n_scenarios = n;
  cert.invariant_cardinality = invariant_set_size;
  cert.confidence_beta = beta;
  cert.epsilon = epsilon_posterior(n, invariant_set_size, beta);
  return cert;
}

}  // namespace scenuc
