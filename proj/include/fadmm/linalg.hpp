#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "fadmm/errors.hpp"
#include "fadmm/kernels.hpp"

namespace fadmm {

using Vec = std::vector<double>;

// Vector helpers over kernels. Sizes are the caller's problem except where a
// binary op would silently read out of bounds; those check and throw DimError.
namespace vec {

double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
double normsq(const Vec& a);
// y += alpha * x
void add_scaled(Vec& y, double alpha, const Vec& x);
Vec scaled(const Vec& x, double alpha);
Vec sum(const Vec& a, const Vec& b);
Vec diff(const Vec& a, const Vec& b);
// a*x + b*y
Vec combine(double a, const Vec& x, double b, const Vec& y);
bool all_finite(const Vec& a);
// Throws NumericError mentioning `what` when a NaN/Inf is present.
void require_finite(const Vec& a, const char* what);
Vec zeros(std::size_t n);

}  // namespace vec

// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  double frobenius_norm() const;
  Matrix transposed() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

// y = M x. Throws DimError naming both shapes on mismatch.
Vec matvec(const Matrix& m, const Vec& x);
// y = M^T x.
Vec matvec_transpose(const Matrix& m, const Vec& x);
Matrix matmul(const Matrix& a, const Matrix& b);
// M^T M, exploiting symmetry.
Matrix gram(const Matrix& m);

// Largest singular value via power iteration on M^T M. Deterministic: starts
// from the normalized all-ones vector. Returns 0 for a zero matrix.
double spectral_norm(const Matrix& m, double tol = 1e-8, int max_iter = 500);

struct ThinSvd {
  Matrix u;         // rows x k, orthonormal columns
  Vec s;            // k singular values, descending, >= 0
  Matrix v;         // cols x k, orthonormal columns
};

// Thin SVD of an n x r matrix with r <= n via cyclic Jacobi eigendecomposition
// of the r x r Gram matrix. Columns of U for singular values below
// 1e-12 * s_max are completed deterministically from canonical basis vectors;
// a final modified Gram-Schmidt pass keeps U orthonormal to machine precision
// even for clustered spectra.
ThinSvd thin_svd(const Matrix& m);

// Symmetric eigendecomposition helper (also used by test oracles for small
// covariance work): returns eigenvalues descending with matching columns in v.
void jacobi_eigh(const Matrix& sym, Vec& eigenvalues, Matrix& eigenvectors);

// Abstract linear map with a cached operator norm. op_norm upper-bounds
// ||Ax||/||x|| (the power-iteration estimate is inflated by a hair so the
// majorizer built from it stays a majorizer).
struct LinearOperator {
  std::size_t rows = 0, cols = 0;
  std::function<Vec(const Vec&)> apply;
  std::function<Vec(const Vec&)> apply_adjoint;
  double op_norm = 0.0;

  static LinearOperator identity(std::size_t n);
  // Wraps scale * M (dense). The matrix is shared, not copied per call.
  static LinearOperator dense(Matrix m, double scale = 1.0);
};

// Power iteration for an operator given only through apply/apply_adjoint.
double operator_norm_estimate(const std::function<Vec(const Vec&)>& apply,
                              const std::function<Vec(const Vec&)>& apply_adjoint,
                              std::size_t cols, double tol = 1e-9, int max_iter = 800);

}  // namespace fadmm
