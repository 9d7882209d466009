#pragma once

#include <cstddef>
#include <vector>

#include "scenuc/common.hpp"

namespace scenuc {

/// Row-major dense matrix, just enough linear algebra for PTDF
/// construction, basis refactorization and the vertex-enumeration oracle.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}

  static DenseMatrix identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  double& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double* row_ptr(int r) { return data_.data() + static_cast<size_t>(r) * cols_; }
  const double* row_ptr(int r) const { return data_.data() + static_cast<size_t>(r) * cols_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

/// Solves A x = b by Gaussian elimination with partial pivoting.
/// Returns false if A is singular (pivot below tol).
bool dense_solve(DenseMatrix a, std::vector<double> b, std::vector<double>& x,
                 double tol = 1e-12);

/// Solves A X =B column-by-column; false on singular A.
bool dense_solve_multi(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& x,
                       double tol = 1e-12);

/// In-place inverse via Gauss-Jordan; false on singular input.
bool dense_invert(DenseMatrix a, DenseMatrix& inv, double tol = 1e-12);

}  // namespace scenuc
