#include "fadmm/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fadmm {

namespace {
void require_positive_mu(double mu, const char* op) {
  if (!(mu > 0.0)) {
    throw ParamError(std::string(op) + ": mu must be positive, got " + std::to_string(mu));
  }
}
}  // namespace

Vec soft_threshold(const Vec& xprime, double tau) {
  if (!(tau >= 0.0)) {
    throw ParamError("soft_threshold: threshold must be nonnegative, got " +
                     std::to_string(tau));
  }
  Vec out(xprime.size());
  kernels::soft_threshold(xprime.data(), tau, out.data(), out.size());
  return out;
}

Vec prox_l1_box(const Vec& xprime, double mu, double rho2, double rho0) {
  require_positive_mu(mu, "prox_l1_box");
  if (!(rho0 > 0.0)) {
    throw ParamError("prox_l1_box: box radius must be positive, got " + std::to_string(rho0));
  }
  if (!(rho2 >= 0.0)) {
    throw ParamError("prox_l1_box: l1 weight must be nonnegative, got " + std::to_string(rho2));
  }
  const bool bounded = std::isfinite(rho0);
  const double tau = mu * rho2;
  Vec out(xprime.size());
  for (std::size_t i = 0; i < xprime.size(); ++i) {
    const double xp = xprime[i];
    // Shrunk points clamped to each side of the box, plus the kink points.
    double cand[5];
    std::size_t n_cand = 0;
    cand[n_cand++] = 0.0;
    cand[n_cand++] = std::min(std::max(xp - tau, 0.0), bounded ? rho0 : std::numeric_limits<double>::max());
    cand[n_cand++] = std::max(std::min(xp + tau, 0.0), bounded ? -rho0 : std::numeric_limits<double>::lowest());
    if (bounded) {
      cand[n_cand++] = rho0;
      cand[n_cand++] = -rho0;
    }
    double best = 0.0;
    double best_q = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < n_cand; ++c) {
      const double v = cand[c];
      const double q = 0.5 / mu * (v - xp) * (v - xp) + rho2 * std::fabs(v);
      if (q < best_q || (q == best_q && std::fabs(v) < std::fabs(best))) {
        best_q = q;
        best = v;
      }
    }
    out[i] = best;
  }
  return out;
}

Vec project_simplex(const Vec& x) {
  if (x.empty()) throw ParamError("project_simplex: empty input");
  Vec u = x;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double running = 0.0;
  double tau = 0.0;
  std::size_t support = 0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    running += u[j];
    const double candidate = (running - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) {
      tau = candidate;
      support = j + 1;
    }
  }
  (void)support;
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::max(x[i] - tau, 0.0);
  return out;
}

Vec prox_generalized_max(const Vec& xprime, double mu, const Vec& b) {
  require_positive_mu(mu, "prox_generalized_max");
  if (xprime.size() != b.size()) {
    throw DimError("prox_generalized_max: size mismatch (" + std::to_string(xprime.size()) +
                   " vs shift " + std::to_string(b.size()) + ")");
  }
  Vec vprime = vec::sum(xprime, b);
  const double top = *std::max_element(vprime.begin(), vprime.end());
  if (top <= 0.0) return xprime;

  // Dual: z̄ maximizes −(μ/2)‖z‖² + ⟨z, v′⟩ over {z ≥ 0, Σz ≤ 1}. The sum
  // constraint is slack exactly when the clipped point already fits inside.
  Vec zbar(vprime.size());
  double clipped_sum = 0.0;
  for (std::size_t i = 0; i < zbar.size(); ++i) {
    zbar[i] = std::max(vprime[i] / mu, 0.0);
    clipped_sum += zbar[i];
  }
  if (clipped_sum > 1.0) zbar = project_simplex(vec::scaled(vprime, 1.0 / mu));
  Vec vbar = vprime;
  vec::add_scaled(vbar, -mu, zbar);

  auto q = [&](const Vec& v) {
    double m = v[0];
    for (double e : v) m = std::max(m, e);
    return 0.5 / mu * vec::normsq(vec::diff(v, vprime)) + std::max(0.0, m);
  };
  // Defensive: at boundary μ both case-split branches can touch; never return
  // something worse than leaving the point untouched.
  if (q(vprime) < q(vbar)) return xprime;
  return vec::diff(vbar, b);
}

Vec prox_orthogonality(const Vec& xprime, std::size_t n, std::size_t r) {
  if (xprime.size() != n * r) {
    throw DimError("prox_orthogonality: vector has " + std::to_string(xprime.size()) +
                   " entries, expected " + std::to_string(n) + "x" + std::to_string(r) + " = " +
                   std::to_string(n * r));
  }
  const ThinSvd svd = thin_svd(unstack_columns(xprime, n, r));
  Matrix polar(n, r);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < r; ++k) acc += svd.u(i, k) * svd.v(j, k);
      polar(i, j) = acc;
    }
  }
  return stack_columns(polar);
}

Vec project_box(const Vec& x, double lo, double hi) {
  if (!(lo <= hi)) {
    throw ParamError("project_box: empty box [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
  }
  Vec out(x.size());
  kernels::clamp(x.data(), lo, hi, out.data(), out.size());
  return out;
}

Matrix unstack_columns(const Vec& x, std::size_t n, std::size_t r) {
  if (x.size() != n * r) {
    throw DimError("unstack_columns: vector has " + std::to_string(x.size()) +
                   " entries, expected " + std::to_string(n * r));
  }
  Matrix m(n, r);
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t i = 0; i < n; ++i) m(i, j) = x[i + j * n];
  }
  return m;
}

Vec stack_columns(const Matrix& m) {
  Vec x(m.rows() * m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t i = 0; i < m.rows(); ++i) x[i + j * m.rows()] = m(i, j);
  }
  return x;
}

}  // namespace fadmm
