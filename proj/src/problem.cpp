#include "fadmm/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace fadmm {

Vec ProblemComponents::sqrtd_subgrad(const Vec& x) const {
  const double d = d_value(x);
  if (!(d > 1e-18)) {
    throw DenominatorError(
        "sqrtd_subgrad: d(x) = " + std::to_string(d) + " is too small to divide by", d);
  }
  return vec::scaled(d_subgrad(x), 0.5 / std::sqrt(d));
}

namespace {
double numerator_parts(const ProblemComponents& p, const Vec& x, double h_term,
                       bool* feasible) {
  const FeasibleValue dv = p.delta_value(x);
  *feasible = dv.feasible;
  if (!dv.feasible) return 0.0;
  return p.f_at(x) + dv.value - p.g_at(x) + h_term;
}

double checked_denominator(const ProblemComponents& p, const Vec& x, const char* op) {
  const double d = p.d_value(x);
  if (!(d > 0.0)) {
    throw DenominatorError(std::string(op) + ": denominator d(x) = " + std::to_string(d) +
                           " is not positive", d);
  }
  return d;
}
}  // namespace

double objective(const ProblemComponents& p, const Vec& x) {
  const double d = checked_denominator(p, x, "objective");
  bool feasible = true;
  const double u = numerator_parts(p, x, p.h.value(p.a.apply(x)), &feasible);
  if (!feasible) return std::numeric_limits<double>::infinity();
  return u / d;
}

double varphi(const ProblemComponents& p, const Vec& x, const Vec& y) {
  const double d = checked_denominator(p, x, "varphi");
  bool feasible = true;
  const double u = numerator_parts(p, x, p.h.value(y), &feasible);
  if (!feasible) return std::numeric_limits<double>::infinity();
  return u / d;
}

double u_value(const ProblemComponents& p, const Vec& x, const Vec& y, const Vec& z,
               double beta, double mu) {
  bool feasible = true;
  const double core = numerator_parts(p, x, smooth_value(p.h, mu, y), &feasible);
  if (!feasible) return std::numeric_limits<double>::infinity();
  const Vec residual = vec::diff(p.a.apply(x), y);
  return core + vec::dot(residual, z) + 0.5 * beta * vec::normsq(residual);
}

double l_value(const ProblemComponents& p, const Vec& x, const Vec& y, const Vec& z,
               double beta, double mu) {
  const double d = checked_denominator(p, x, "l_value");
  return u_value(p, x, y, z, beta, mu) / d;
}

double k_value(const ProblemComponents& p, double alpha, const Vec& x, const Vec& y,
               const Vec& z, double beta, double mu) {
  const double d = p.d_value(x);
  if (!(d >= 0.0)) {
    throw DenominatorError("k_value: d(x) = " + std::to_string(d) + " is negative", d);
  }
  return -2.0 * alpha * std::sqrt(d) + alpha * alpha * u_value(p, x, y, z, beta, mu);
}

namespace {
std::vector<std::size_t> topk_indices(const Vec& x, std::size_t k) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    return std::fabs(x[i]) > std::fabs(x[j]);
  });
  idx.resize(k);
  return idx;
}
}  // namespace

double topk_value(const Vec& x, std::size_t k) {
  if (k == 0 || k > x.size()) {
    throw ParamError("topk_value: k = " + std::to_string(k) + " out of range for dimension " +
                     std::to_string(x.size()));
  }
  Vec mags(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) mags[i] = std::fabs(x[i]);
  std::nth_element(mags.begin(), mags.begin() + (k - 1), mags.end(), std::greater<double>());
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += mags[i];
  return s;
}

Vec topk_subgradient(const Vec& x, std::size_t k) {
  if (k == 0 || k > x.size()) {
    throw ParamError("topk_subgradient: k = " + std::to_string(k) +
                     " out of range for dimension " + std::to_string(x.size()));
  }
  Vec s(x.size(), 0.0);
  for (std::size_t i : topk_indices(x, k)) {
    s[i] = x[i] > 0.0 ? 1.0 : (x[i] < 0.0 ? -1.0 : 0.0);
  }
  return s;
}

}  // namespace fadmm
