#include "fadmm/kernels.hpp"

#include <cmath>

// Reference kernels: plain sequential loops, one accumulator, no reassociation.
// These define the semantics the SIMD variants are tested against.
namespace fadmm::kernels::detail {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double nrm2sq_scalar(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * a[i];
  return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void waxpby_scalar(double a, const double* x, double b, const double* y, double* w,
                   std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) w[i] = a * x[i] + b * y[i];
}

void scal_scalar(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void sub_scalar(const double* x, const double* y, double* w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) w[i] = x[i] - y[i];
}

void soft_threshold_scalar(const double* x, double tau, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double mag = std::fabs(x[i]) - tau;
    out[i] = mag > 0.0 ? std::copysign(mag, x[i]) : 0.0;
  }
}

void clamp_scalar(const double* x, double lo, double hi, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double v = x[i];
    if (v < lo) v = lo;
    if (v > hi) v = hi;
    out[i] = v;
  }
}

}  // namespace fadmm::kernels::detail
