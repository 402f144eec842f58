#include "fadmm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace fadmm {

namespace vec {

namespace {
void check_same_size(const Vec& a, const Vec& b, const char* op) {
  if (a.size() != b.size()) {
    throw DimError(std::string(op) + ": size mismatch (" + std::to_string(a.size()) +
                   " vs " + std::to_string(b.size()) + ")");
  }
}
}  // namespace

double dot(const Vec& a, const Vec& b) {
  check_same_size(a, b, "dot");
  return kernels::dot(a.data(), b.data(), a.size());
}

double normsq(const Vec& a) { return kernels::nrm2sq(a.data(), a.size()); }

double norm(const Vec& a) { return std::sqrt(normsq(a)); }

void add_scaled(Vec& y, double alpha, const Vec& x) {
  check_same_size(y, x, "add_scaled");
  kernels::axpy(alpha, x.data(), y.data(), y.size());
}

Vec scaled(const Vec& x, double alpha) {
  Vec out = x;
  kernels::scal(alpha, out.data(), out.size());
  return out;
}

Vec sum(const Vec& a, const Vec& b) {
  check_same_size(a, b, "sum");
  Vec out(a.size());
  kernels::waxpby(1.0, a.data(), 1.0, b.data(), out.data(), out.size());
  return out;
}

Vec diff(const Vec& a, const Vec& b) {
  check_same_size(a, b, "diff");
  Vec out(a.size());
  kernels::sub(a.data(), b.data(), out.data(), out.size());
  return out;
}

Vec combine(double a, const Vec& x, double b, const Vec& y) {
  check_same_size(x, y, "combine");
  Vec out(x.size());
  kernels::waxpby(a, x.data(), b, y.data(), out.data(), out.size());
  return out;
}

bool all_finite(const Vec& a) {
  for (double v : a) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void require_finite(const Vec& a, const char* what) {
  if (!all_finite(a)) {
    throw NumericError(std::string(what) + ": non-finite entry encountered");
  }
}

Vec zeros(std::size_t n) { return Vec(n, 0.0); }

}  // namespace vec

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double Matrix::frobenius_norm() const {
  return std::sqrt(kernels::nrm2sq(data_.data(), data_.size()));
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

namespace {
[[noreturn]] void throw_shape_mismatch(const char* op, const Matrix& m, std::size_t vec_len) {
  throw DimError(std::string(op) + ": shape mismatch (matrix is " + std::to_string(m.rows()) +
                 "x" + std::to_string(m.cols()) + ", vector has " + std::to_string(vec_len) +
                 " entries)");
}
}  // namespace

Vec matvec(const Matrix& m, const Vec& x) {
  if (x.size() != m.cols()) throw_shape_mismatch("matvec", m, x.size());
  Vec y(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    y[i] = kernels::dot(m.row(i), x.data(), m.cols());
  }
  return y;
}

Vec matvec_transpose(const Matrix& m, const Vec& x) {
  if (x.size() != m.rows()) throw_shape_mismatch("matvec_transpose", m, x.size());
  Vec y(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    kernels::axpy(x[i], m.row(i), y.data(), m.cols());
  }
  return y;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimError("matmul: shape mismatch (" + std::to_string(a.rows()) + "x" +
                   std::to_string(a.cols()) + " times " + std::to_string(b.rows()) + "x" +
                   std::to_string(b.cols()) + ")");
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      kernels::axpy(a(i, k), b.row(k), c.row(i), b.cols());
    }
  }
  return c;
}

Matrix gram(const Matrix& m) {
  const std::size_t r = m.cols();
  Matrix g(r, r);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double* row = m.row(i);
    for (std::size_t j = 0; j < r; ++j) {
      kernels::axpy(row[j], row + j, g.row(j) + j, r - j);
    }
  }
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t k = j + 1; k < r; ++k) g(k, j) = g(j, k);
  }
  return g;
}

void jacobi_eigh(const Matrix& sym, Vec& eigenvalues, Matrix& eigenvectors) {
  if (sym.rows() != sym.cols()) {
    throw DimError("jacobi_eigh: matrix is " + std::to_string(sym.rows()) + "x" +
                   std::to_string(sym.cols()) + ", need square");
  }
  const std::size_t n = sym.rows();
  Matrix a = sym;
  Matrix v = Matrix::identity(n);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) s += a(p, q) * a(p, q);
    }
    return std::sqrt(2.0 * s);
  };

  const double scale = std::max(a.frobenius_norm(), 1e-300);
  for (int sweep = 0; sweep < 60 && off_norm() > 1e-15 * scale; ++sweep) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::fabs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i) > a(j, j);
  });

  eigenvalues.assign(n, 0.0);
  eigenvectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    eigenvalues[j] = a(order[j], order[j]);
    for (std::size_t i = 0; i < n; ++i) eigenvectors(i, j) = v(i, order[j]);
  }
}

double spectral_norm(const Matrix& m, double tol, int max_iter) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  return operator_norm_estimate(
      [&](const Vec& x) { return matvec(m, x); },
      [&](const Vec& x) { return matvec_transpose(m, x); }, m.cols(), tol, max_iter);
}

double operator_norm_estimate(const std::function<Vec(const Vec&)>& apply,
                              const std::function<Vec(const Vec&)>& apply_adjoint,
                              std::size_t cols, double tol, int max_iter) {
  if (cols == 0) return 0.0;
  Vec v(cols, 1.0 / std::sqrt(static_cast<double>(cols)));
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Vec w = apply_adjoint(apply(v));
    const double rayleigh = vec::dot(v, w);
    const double wnorm = vec::norm(w);
    if (wnorm == 0.0) return 0.0;
    kernels::scal(1.0 / wnorm, w.data(), w.size());
    v = std::move(w);
    if (it > 0 && std::fabs(rayleigh - lambda) <= tol * std::max(std::fabs(rayleigh), 1e-30)) {
      lambda = rayleigh;
      break;
    }
    lambda = rayleigh;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

ThinSvd thin_svd(const Matrix& m) {
  const std::size_t n = m.rows(), r = m.cols();
  if (r > n) {
    throw DimError("thin_svd: matrix is " + std::to_string(n) + "x" + std::to_string(r) +
                   ", need rows >= cols");
  }
  ThinSvd out;
  Vec w;
  jacobi_eigh(gram(m), w, out.v);

  out.s.assign(r, 0.0);
  double smax = 0.0;
  for (std::size_t j = 0; j < r; ++j) {
    out.s[j] = std::sqrt(std::max(w[j], 0.0));
    smax = std::max(smax, out.s[j]);
  }
  const double cutoff = 1e-12 * smax;

  out.u = Matrix(n, r);
  std::vector<bool> filled(r, false);
  for (std::size_t j = 0; j < r; ++j) {
    if (out.s[j] <= cutoff) continue;
    Vec vj(r);
    for (std::size_t i = 0; i < r; ++i) vj[i] = out.v(i, j);
    const Vec uj = matvec(m, vj);
    const double inv = 1.0 / out.s[j];
    for (std::size_t i = 0; i < n; ++i) out.u(i, j) = uj[i] * inv;
    filled[j] = true;
  }

  // Modified Gram-Schmidt over U's columns in index order. Columns from the
  // cutoff branch (and any that collapse) are completed from canonical basis
  // vectors, so the result is orthonormal even for rank-deficient input.
  std::size_t next_canonical = 0;
  for (std::size_t j = 0; j < r; ++j) {
    Vec col(n, 0.0);
    if (filled[j]) {
      for (std::size_t i = 0; i < n; ++i) col[i] = out.u(i, j);
    }
    for (int attempt = 0; attempt < static_cast<int>(n) + 1; ++attempt) {
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < j; ++k) {
          double proj = 0.0;
          for (std::size_t i = 0; i < n; ++i) proj += out.u(i, k) * col[i];
          for (std::size_t i = 0; i < n; ++i) col[i] -= proj * out.u(i, k);
        }
      }
      const double nrm = std::sqrt(kernels::nrm2sq(col.data(), col.size()));
      if (nrm > 1e-6 || (filled[j] && nrm > 0.5)) {
        kernels::scal(1.0 / nrm, col.data(), col.size());
        break;
      }
      col.assign(n, 0.0);
      col[next_canonical % n] = 1.0;
      ++next_canonical;
      filled[j] = false;
    }
    for (std::size_t i = 0; i < n; ++i) out.u(i, j) = col[i];
  }
  return out;
}

LinearOperator LinearOperator::identity(std::size_t n) {
  LinearOperator op;
  op.rows = op.cols = n;
  op.apply = [](const Vec& x) { return x; };
  op.apply_adjoint = [](const Vec& x) { return x; };
  op.op_norm = 1.0;
  return op;
}

LinearOperator LinearOperator::dense(Matrix m, double scale) {
  auto shared = std::make_shared<const Matrix>(std::move(m));
  LinearOperator op;
  op.rows = shared->rows();
  op.cols = shared->cols();
  op.apply = [shared, scale](const Vec& x) {
    Vec y = matvec(*shared, x);
    if (scale != 1.0) kernels::scal(scale, y.data(), y.size());
    return y;
  };
  op.apply_adjoint = [shared, scale](const Vec& x) {
    Vec y = matvec_transpose(*shared, x);
    if (scale != 1.0) kernels::scal(scale, y.data(), y.size());
    return y;
  };
  // Power iteration approaches the true norm from below; pad so op_norm is a
  // valid upper bound for the Lipschitz constants assembled from it.
  op.op_norm = std::fabs(scale) * spectral_norm(*shared, 1e-9, 800) * (1.0 + 1e-8);
  return op;
}

}  // namespace fadmm
