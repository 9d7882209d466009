#include "scenuc/dense.hpp"

#include <cmath>
#include <numeric>

namespace scenuc {

namespace {

// Returns the permutation-encoded LU of a in place; false if singular.
bool lu_factor(DenseMatrix& a, std::vector<int>& perm, double tol) {
  const int n = a.rows();
  perm.resize(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::fabs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::fabs(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best <= tol) return false;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(perm[k], perm[piv]);
    }
    const double inv_piv = 1.0 / a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const double f = a(i, k) * inv_piv;
      a(i, k) = f;
      if (f == 0.0) continue;
      for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return true;
}

void lu_solve_one(const DenseMatrix& lu, const std::vector<int>& perm,
                  const std::vector<double>& b, std::vector<double>& x) {
  const int n = lu.rows();
  x.resize(n);
  for (int i = 0; i < n; ++i) x[i] = b[perm[i]];
  for (int i = 1; i < n; ++i) {
    double s = x[i];
    for (int j = 0; j < i; ++j) s -= lu(i, j) * x[j];
    x[i] = s;
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (int j = i + 1; j < n; ++j) s -= lu(i, j) * x[j];
    x[i] = s / lu(i, i);
  }
}

}  // namespace

bool dense_solve(DenseMatrix a, std::vector<double> b, std::vector<double>& x, double tol) {
  if (a.rows() != a.cols() || static_cast<int>(b.size()) != a.rows())
    throw DimensionMismatch("dense_solve: shape mismatch");
  std::vector<int> perm;
  if (!lu_factor(a, perm, tol)) return false;
  lu_solve_one(a, perm, b, x);
  return true;
}

bool dense_solve_multi(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& x, double tol) {
  if (a.rows() != a.cols() || b.rows() != a.rows())
    throw DimensionMismatch("dense_solve_multi: shape mismatch");
  DenseMatrix lu = a;
  std::vector<int> perm;
  if (!lu_factor(lu, perm, tol)) return false;
  x = DenseMatrix(a.rows(), b.cols());
  std::vector<double> col(a.rows()), sol;
  for (int j = 0; j < b.cols(); ++j) {
    for (int i = 0; i < b.rows(); ++i) col[i] = b(i, j);
    lu_solve_one(lu, perm, col, sol);
    for (int i = 0; i < a.rows(); ++i) x(i, j) = sol[i];
  }
  return true;
}

bool dense_invert(DenseMatrix a, DenseMatrix& inv, double tol) {
  return dense_solve_multi(a, DenseMatrix::identity(a.rows()), inv, tol);
}

}  // namespace scenuc
