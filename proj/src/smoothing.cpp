#include "fadmm/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fadmm/prox.hpp"

namespace fadmm {

namespace {
void check_mu(double mu, const char* op) {
  if (!(mu > 0.0)) {
    throw ParamError(std::string(op) + ": mu must be positive, got " + std::to_string(mu));
  }
}
}  // namespace

double smooth_value(const SmoothableConvex& h, double mu, const Vec& y) {
  check_mu(mu, "smooth_value");
  const Vec p = h.prox(y, mu);
  return vec::normsq(vec::diff(y, p)) / (2.0 * mu) + h.value(p);
}

Vec smooth_grad(const SmoothableConvex& h, double mu, const Vec& y) {
  check_mu(mu, "smooth_grad");
  const Vec p = h.prox(y, mu);
  return vec::scaled(vec::diff(y, p), 1.0 / mu);
}

SmoothedProxResult prox_smoothed(const SmoothableConvex& h, double mu, double beta,
                                 const Vec& b) {
  check_mu(mu, "prox_smoothed");
  if (!(beta > 0.0)) {
    throw ParamError("prox_smoothed: beta must be positive, got " + std::to_string(beta));
  }
  SmoothedProxResult out;
  out.ycheck = h.prox(b, mu + 1.0 / beta);
  const double bm = beta * mu;
  out.ybar = vec::combine(1.0 / (1.0 + bm), out.ycheck, bm / (1.0 + bm), b);
  return out;
}

SmoothableConvex make_l1(double scale, std::size_t dim) {
  if (!(scale >= 0.0)) {
    throw ParamError("make_l1: scale must be nonnegative, got " + std::to_string(scale));
  }
  SmoothableConvex h;
  h.value = [scale](const Vec& y) {
    double s = 0.0;
    for (double v : y) s += std::fabs(v);
    return scale * s;
  };
  h.prox = [scale](const Vec& y, double mu) { return soft_threshold(y, mu * scale); };
  h.subgrad = [scale](const Vec& y) {
    Vec s(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      s[i] = y[i] > 0.0 ? scale : (y[i] < 0.0 ? -scale : 0.0);
    }
    return s;
  };
  h.lipschitz = scale * std::sqrt(static_cast<double>(dim));
  return h;
}

SmoothableConvex make_shifted_l1(Vec shift, double scale) {
  if (!(scale >= 0.0)) {
    throw ParamError("make_shifted_l1: scale must be nonnegative, got " +
                     std::to_string(scale));
  }
  const std::size_t dim = shift.size();
  SmoothableConvex h;
  h.value = [shift, scale](const Vec& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) s += std::fabs(y[i] - shift[i]);
    return scale * s;
  };
  h.prox = [shift, scale](const Vec& y, double mu) {
    Vec out = soft_threshold(vec::diff(y, shift), mu * scale);
    vec::add_scaled(out, 1.0, shift);
    return out;
  };
  h.subgrad = [shift, scale](const Vec& y) {
    Vec s(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double r = y[i] - shift[i];
      s[i] = r > 0.0 ? scale : (r < 0.0 ? -scale : 0.0);
    }
    return s;
  };
  h.lipschitz = scale * std::sqrt(static_cast<double>(dim));
  return h;
}

SmoothableConvex make_generalized_max(Vec shift) {
  SmoothableConvex h;
  h.value = [shift](const Vec& y) {
    double m = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) m = std::max(m, y[i] + shift[i]);
    return m;
  };
  h.prox = [shift](const Vec& y, double mu) { return prox_generalized_max(y, mu, shift); };
  h.subgrad = [shift](const Vec& y) {
    Vec s(y.size(), 0.0);
    double m = 0.0;
    std::size_t arg = y.size();
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] + shift[i] > m) {
        m = y[i] + shift[i];
        arg = i;
      }
    }
    if (arg < y.size()) s[arg] = 1.0;
    return s;
  };
  h.lipschitz = 1.0;
  return h;
}

}  // namespace fadmm
