#pragma once

// Small dense matrices for the per-channel Roothaan problem (dims <= 32):
// Cholesky factorization, triangular solves, and a cyclic Jacobi
// eigensolver with deterministic ordering and sign conventions.

#include <vector>

namespace aetos {

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Matrix transposed() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
double maxAbsDiff(const Matrix& a, const Matrix& b);

// Lower-triangular L with L L^T = S. Throws LinearDependenceError (with the
// offending pivot index) when a pivot is non-positive.
Matrix choleskyFactor(const Matrix& S);

// L^-1 F L^-T for lower-triangular L; result symmetrized.
Matrix orthonormalizeFock(const Matrix& L, const Matrix& F);

// L^-T Cprime for lower-triangular L.
Matrix backTransformCoefficients(const Matrix& L, const Matrix& Cprime);

struct EigenSolution {
  std::vector<double> values;  // ascending
  Matrix vectors;              // columns, orthonormal, sign-fixed
};

// Cyclic Jacobi sweeps until the off-diagonal Frobenius norm falls below
// 1e-14 of the diagonal scale. Eigenvalues ascend; each eigenvector has its
// largest-magnitude component positive.
EigenSolution symmetricEigen(const Matrix& A);

// Generalized problem F C = S C eps for one channel, solved with the same
// Cholesky + Jacobi pipeline in extended precision; C^T S C = I and the
// energy stop independent of the basis ordering at the 1e-12 level.
EigenSolution generalizedEigenExtended(const Matrix& F, const Matrix& S);

// In-place extended-precision correction of C so that C^T S C = I; used to
// re-establish orthonormality after a change of normalization.
void refineOrthonormality(Matrix& C, const Matrix& S);

}  // namespace aetos
