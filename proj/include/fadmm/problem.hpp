#pragma once

#include "fadmm/linalg.hpp"
#include "fadmm/smoothing.hpp"

namespace fadmm {

// Value of an extended-real function: indicator feasibility plus finite part.
struct FeasibleValue {
  bool feasible = true;
  double value = 0.0;
};

// One structured fractional objective
//   F(x) = u(x) / d(x),  u = f + delta - g + h(A x),
// described entirely through oracles. Null function members mean
// "identically zero" for f and g.
struct ProblemComponents {
  std::size_t dim_x = 0, dim_y = 0;

  // f: smooth convex part of the numerator.
  std::function<double(const Vec&)> f_value;
  std::function<Vec(const Vec&)> f_grad;
  double smoothness_f = 0.0;  // gradient Lipschitz constant

  // delta: proper closed (possibly indicator) part, handled via prox.
  std::function<Vec(const Vec&, double)> delta_prox;
  std::function<FeasibleValue(const Vec&)> delta_value;

  // g: continuous convex part entering with a minus sign.
  std::function<double(const Vec&)> g_value;
  std::function<Vec(const Vec&)> g_subgrad;

  SmoothableConvex h;
  LinearOperator a;

  // d: the denominator. Oracles give the value and one subgradient element.
  std::function<double(const Vec&)> d_value;
  std::function<Vec(const Vec&)> d_subgrad;
  double lipschitz_d = 0.0;        // C_d on the feasible set
  double weak_convexity_d = 0.0;   // W_d
  bool d_weakly_convex = false;    // d itself is W_d-weakly convex
  bool sqrtd_weakly_convex = false;  // sqrt(d) is W_d-weakly convex (enables Q-variants)

  // Decomposition delta = indicator(Omega) + Lipschitz remainder, needed only
  // by the projected-subgradient baseline. All three absent means the
  // baseline refuses the problem.
  std::function<Vec(const Vec&)> project;
  std::function<double(const Vec&)> delta_lip_value;
  std::function<Vec(const Vec&)> delta_lip_subgrad;

  double f_at(const Vec& x) const { return f_value ? f_value(x) : 0.0; }
  Vec f_grad_at(const Vec& x) const { return f_grad ? f_grad(x) : vec::zeros(dim_x); }
  double g_at(const Vec& x) const { return g_value ? g_value(x) : 0.0; }
  Vec g_subgrad_at(const Vec& x) const { return g_subgrad ? g_subgrad(x) : vec::zeros(dim_x); }

  // Chain-rule element of the subdifferential of sqrt(d) at x. Throws
  // DenominatorError when d(x) is too close to zero to divide.
  Vec sqrtd_subgrad(const Vec& x) const;
};

// F(x) = u(x)/d(x) with h evaluated at Ax. Infeasible x gives +infinity;
// d(x) <= 0 throws DenominatorError carrying d(x).
double objective(const ProblemComponents& p, const Vec& x);

// phi(x, y) = (f(x) + delta(x) - g(x) + h(y)) / d(x): the consensus form with
// h decoupled from Ax. phi(x, Ax) == objective(x).
double varphi(const ProblemComponents& p, const Vec& x, const Vec& y);

// Smoothed augmented Lagrangian numerator:
//   U(x, y; z; beta, mu) = f + delta - g + h_mu(y) + <Ax - y, z> + (beta/2)||Ax - y||^2.
double u_value(const ProblemComponents& p, const Vec& x, const Vec& y, const Vec& z,
               double beta, double mu);

// L = U / d.
double l_value(const ProblemComponents& p, const Vec& x, const Vec& y, const Vec& z,
               double beta, double mu);

// K(alpha) = -2*alpha*sqrt(d) + alpha^2 * U.
double k_value(const ProblemComponents& p, double alpha, const Vec& x, const Vec& y,
               const Vec& z, double beta, double mu);

// Sum of the k largest magnitudes.
double topk_value(const Vec& x, std::size_t k);

// One selected subgradient: sign pattern on the top-k support, ties broken by
// larger magnitude first, then smaller index.
Vec topk_subgradient(const Vec& x, std::size_t k);

}  // namespace fadmm
