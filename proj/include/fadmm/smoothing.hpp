#pragma once

#include "fadmm/linalg.hpp"

namespace fadmm {

// A convex function handled entirely through its value and proximal oracle.
// `lipschitz` is the constant C with ||s|| <= C for all subgradients s; it
// drives the smoothing-error bounds. `subgrad`, when present, returns one
// selected element of the (unsmoothed) subdifferential and is only needed by
// the plain subgradient baseline.
struct SmoothableConvex {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&, double)> prox;  // argmin value(v) + ||v-y||^2/(2*mu)
  std::function<Vec(const Vec&)> subgrad;
  double lipschitz = 0.0;
};

// Moreau envelope value: h_mu(y) = ||y - p||^2/(2*mu) + h(p) at p = prox(y, mu).
double smooth_value(const SmoothableConvex& h, double mu, const Vec& y);

// Envelope gradient (y - prox(y, mu)) / mu.
Vec smooth_grad(const SmoothableConvex& h, double mu, const Vec& y);

struct SmoothedProxResult {
  Vec ybar;    // argmin_y h_mu(y) + (beta/2) ||y - b||^2
  Vec ycheck;  // prox(b; h, mu + 1/beta), the point carrying the dual certificate
};

// Closed-form minimizer of the envelope plus a quadratic penalty:
// ycheck = prox(b, mu + 1/beta), ybar = (ycheck + beta*mu*b) / (1 + beta*mu).
// beta*(b - ybar) is a subgradient of h at ycheck.
SmoothedProxResult prox_smoothed(const SmoothableConvex& h, double mu, double beta,
                                 const Vec& b);

// Ready-made instances used by the applications.
SmoothableConvex make_l1(double scale, std::size_t dim);
SmoothableConvex make_shifted_l1(Vec shift, double scale);  // scale * ||y - shift||_1
SmoothableConvex make_generalized_max(Vec shift);           // max(0, max_i(y_i + shift_i))

}  // namespace fadmm
