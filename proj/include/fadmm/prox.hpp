#pragma once

#include "fadmm/linalg.hpp"

namespace fadmm {

// Every operator here solves min_x (1/(2*mu)) ||x - xprime||^2 + p(x) exactly
// for its particular p, with deterministic tie-breaking. mu must be positive
// (ParamError otherwise).

// p = tau * ||x||_1 (tau is the already-scaled threshold, i.e. mu*rho).
Vec soft_threshold(const Vec& xprime, double tau);

// p = rho2 * ||x||_1 + indicator(|x_i| <= rho0). rho0 may be +infinity.
// Separable; each coordinate picks the best of five closed-form candidates,
// ties broken toward smaller magnitude.
Vec prox_l1_box(const Vec& xprime, double mu, double rho2, double rho0);

// Euclidean projection onto the probability simplex (sort-and-threshold).
Vec project_simplex(const Vec& x);

// p(x) = max(0, max_i(x_i + b_i)). Dual reduction to a simplex projection on
// the active branch; the result is compared against keeping x unchanged and
// the better of the two is returned.
Vec prox_generalized_max(const Vec& xprime, double mu, const Vec& b);

// Projection of an n x r matrix (stored as column-stacked vector) onto
// matrices with orthonormal columns: the polar factor U V^T of the thin SVD.
Vec prox_orthogonality(const Vec& xprime, std::size_t n, std::size_t r);

// Componentwise projection onto [lo, hi].
Vec project_box(const Vec& x, double lo, double hi);

// Column-stacking helpers shared by the orthogonality prox and the trace-form
// applications: mat(x)[i][j] = x[i + j*n].
Matrix unstack_columns(const Vec& x, std::size_t n, std::size_t r);
Vec stack_columns(const Matrix& m);

}  // namespace fadmm
