#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace scenuc {

/// Exact rational arithmetic for validating the floating-point tail and
/// sample-complexity search. Header-only; used by the oracle-check suites
/// and the test suites only.
using Rational = boost::multiprecision::cpp_rational;

inline Rational rational_pow(Rational base, int exp) {
  Rational out = 1;
  while (exp > 0) {
    if (exp & 1) out *= base;
    base *= base;
    exp >>= 1;
  }
  return out;
}

inline Rational rational_choose(int n, int k) {
  boost::multiprecision::cpp_int num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= n - i;
    den *= i + 1;
  }
  return Rational(num, den);
}

/// sum_{i=0}^{h-1} C(n,i) eps^i (1-eps)^(n-i), exactly.
inline Rational exact_binomial_tail(int n, int h, const Rational& eps) {
  Rational sum = 0;
  const Rational one_m = Rational(1) - eps;
  for (int i = 0; i < h; ++i)
    sum += rational_choose(n, i) * rational_pow(eps, i) * rational_pow(one_m, n - i);
  return sum;
}

}  // namespace scenuc
