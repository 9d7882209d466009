#include <doctest.h>

#include <cmath>

#include "scenuc/exact_tail.hpp"
#include "scenuc/theory.hpp"

using namespace scenuc;

TEST_CASE("posterior epsilon: pinned values") {
  CHECK(epsilon_posterior(100, 100, 0.01) == 1.0);
  // 1 - (0.1/10)^(1/10)
  CHECK(epsilon_posterior(10, 0, 0.1) ==
        doctest::Approx(1.0 - std::pow(0.01, 0.1)).epsilon(1e-12));
  // N*C(N,k) = 4, exponent 1: 1 - 0.5/4
  CHECK(epsilon_posterior(2, 1, 0.5) == doctest::Approx(0.875).epsilon(1e-12));
}

TEST_CASE("posterior epsilon: domain handling") {
  CHECK_THROWS_AS(epsilon_posterior(10, 11, 0.1), DomainError);
  CHECK_THROWS_AS(epsilon_posterior(10, -1, 0.1), DomainError);
  CHECK_THROWS_AS(epsilon_posterior(0, 0, 0.1), DomainError);
  CHECK_THROWS_AS(epsilon_posterior(10, 5, 0.0), DomainError);
  CHECK_THROWS_AS(epsilon_posterior(10, 5, 1.0), DomainError);
  for (int k = 0; k < 40; ++k) {
    const double e = epsilon_posterior(40, k, 1e-3);
    CHECK(e > 0.0);
    CHECK(e < 1.0);
  }
}

TEST_CASE("posterior epsilon: recomputation is bit-identical") {
  const EpsilonCertificate cert = certify(200, 10, 1e-3);
  CHECK(cert.epsilon == epsilon_posterior(200, 10, 1e-3));
  CHECK(cert.epsilon == epsilon_posterior(cert.n_scenarios, cert.invariant_cardinality,
                                          cert.confidence_beta));
  CHECK(certify(7, 7, 0.2).epsilon == 1.0);
  // larger beta -> smaller epsilon (ordering only)
  CHECK(certify(50, 5, 0.2).epsilon <= certify(50, 5, 0.01).epsilon);
}

TEST_CASE("binomial tail: closed forms and edge cases") {
  CHECK(binomial_tail(90, 1, 0.05) == doctest::Approx(std::pow(0.95, 90)).epsilon(1e-12));
  CHECK(binomial_tail(25, 0, 0.3) == 0.0);
  CHECK_THROWS_AS(binomial_tail(10, 11, 0.5), DomainError);
  CHECK_THROWS_AS(binomial_tail(10, 2, 0.0), DomainError);
}

TEST_CASE("binomial tail matches exact rational arithmetic for N <= 30") {
  const std::pair<int, int> fracs[] = {{1, 100}, {5, 100}, {1, 10}, {1, 2}};
  for (int n = 1; n <= 30; ++n)
    for (const auto& [num, den] : fracs) {
      const Rational eps_rat(num, den);
      const double eps = static_cast<double>(num) / den;
      for (int h = 0; h <= n; ++h) {
        CAPTURE(n);
        CAPTURE(h);
        const double exact = static_cast<double>(exact_binomial_tail(n, h, eps_rat));
        CHECK(std::fabs(binomial_tail(n, h, eps) - exact) <= 1e-12);
      }
    }
}

TEST_CASE("binomial tail monotonicity in N and h") {
  for (double eps : {0.05, 0.2}) {
    for (int n = 5; n <= 60; ++n) {
      for (int h = 0; h <= 4; ++h) {
        CHECK(binomial_tail(n + 1, h, eps) <= binomial_tail(n, h, eps) + 1e-15);
        CHECK(binomial_tail(n, h, eps) <= binomial_tail(n, h + 1, eps) + 1e-15);
      }
    }
  }
}

TEST_CASE("sample complexity: pinned and closed-form values") {
  CHECK(sample_complexity_convex({0.05, 0.01, 1}) == 90);
  CHECK(90 == static_cast<int>(std::ceil(std::log(0.01) / std::log(0.95))));
  CHECK(sample_complexity_convex({0.5, 0.5, 1}) == 1);
}

TEST_CASE("sample complexity matches the exact rational search") {
  // h = 5 spot value plus a grid, each verified at the exact boundary.
  const struct {
    int eps_num, eps_den;
    double beta;
    int h;
  } grid[] = {{5, 100, 0.01, 5}, {5, 100, 0.01, 1},  {1, 10, 0.001, 3},
              {2, 10, 0.05, 7},  {5, 100, 0.001, 10}, {3, 10, 0.1, 2}};
  for (const auto& q : grid) {
    const double eps = static_cast<double>(q.eps_num) / q.eps_den;
    const int n = sample_complexity_convex({eps, q.beta, q.h});
    CAPTURE(q.h);
    const Rational eps_rat(q.eps_num, q.eps_den);
    const Rational beta_rat = [&] {
      if (q.beta == 0.01) return Rational(1, 100);
      if (q.beta == 0.001) return Rational(1, 1000);
      if (q.beta == 0.05) return Rational(5, 100);
      return Rational(1, 10);
    }();
    CHECK(exact_binomial_tail(n, q.h, eps_rat) <= beta_rat);
    if (n > q.h) CHECK(exact_binomial_tail(n - 1, q.h, eps_rat) > beta_rat);
  }
}

TEST_CASE("epsilon monotonicity on a compact grid") {
  const double betas[] = {1e-6, 1e-3, 0.1, 0.5};
  for (int n = 2; n <= 120; ++n) {
    for (double beta : betas) {
      for (int k = 0; k < n; ++k)
        CHECK(epsilon_posterior(n, k, beta) <= epsilon_posterior(n, k + 1, beta));
      for (int k = 0; k <= n; ++k)
        CHECK(epsilon_posterior(n + 1, k, beta) <= epsilon_posterior(n, k, beta));
    }
    for (int k = 0; k <= n; ++k)
      for (int b = 0; b + 1 < 4; ++b)
        CHECK(epsilon_posterior(n, k, betas[b]) >= epsilon_posterior(n, k, betas[b + 1]));
  }
}

TEST_CASE("prior sample size is the exact boundary") {
  CHECK(prior_sample_size(0.9999, 0.5, 4) == 5);  // first defined N wins near eps = 1
  for (double eps : {0.05, 0.15, 0.4})
    for (double beta : {1e-3, 0.05})
      for (int h : {0, 2, 6}) {
        const int n = prior_sample_size(eps, beta, h);
        CAPTURE(eps);
        CAPTURE(h);
        CHECK(epsilon_posterior(n, h, beta) <= eps);
        if (n > h + 1) CHECK(epsilon_posterior(n - 1, h, beta) > eps);
      }
  CHECK_THROWS_AS(prior_sample_size(0.05, 0.01, -1), DomainError);
}
