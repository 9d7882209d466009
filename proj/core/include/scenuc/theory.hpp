#pragma once

#include "scenuc/common.hpp"

namespace scenuc {

/// Posterior risk certificate: with confidence 1-beta over the N sampled
/// scenarios, the violation probability of the returned solution is at most
/// epsilon(N, k, beta), where k is the cardinality of a verified invariant
/// scenario set.
struct EpsilonCertificate {
  int n_scenarios = 0;
  int invariant_cardinality = 0;
  double confidence_beta = 0.0;
  double epsilon = 1.0;
};

struct ComplexityQuery {
  double epsilon = 0.05;
  double beta = 0.01;
  int helly_h = 1;  // support-cardinality bound; <= n for convex problems
};

/// Piecewise posterior bound, evaluated in log space:
/// k == n -> 1; otherwise 1 - exp((ln beta - ln n - lnC(n,k)) / (n-k)).
/// Throws DomainError for n < 1, k outside [0,n], or beta outside (0,1).
double epsilon_posterior(int n, int k, double beta);

/// Lower binomial tail sum_{i=0}^{h-1} C(n,i) eps^i (1-eps)^{n-i},
/// log-space terms with compensated summation. h == 0 gives 0.
double binomial_tail(int n, int h, double eps);

/// Smallest N with binomial_tail(N, h, eps) <= beta (exists for every valid
/// query since the tail vanishes as N grows). Exponential bracketing then
/// binary search, with a local scan to pin the boundary exactly.
int sample_complexity_convex(const ComplexityQuery& q);

/// Smallest N >= h+1 with epsilon_posterior(N, h, beta) <= eps; the prior
/// sample size that guarantees the epsilon level before solving, valid when
/// the invariant-set cardinality can be bounded by h in advance.
int prior_sample_size(double eps, double beta, int h);

/// Certificate for a solved scenario problem; k must be the cardinality of
/// a verified invariant set (the caller's responsibility).
EpsilonCertificate certify(int n, int invariant_set_size, double beta);

}  // namespace scenuc
