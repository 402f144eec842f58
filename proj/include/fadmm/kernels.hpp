#pragma once

#include <cstddef>

// Dense inner-loop kernels. Each operation has a scalar reference
// implementation and, on x86-64 with AVX2+FMA, a vectorized variant. The
// backend is chosen once at startup (CPU probe, overridable via the
// FADMM_KERNELS env var or force_backend) and stays fixed, so repeated runs
// on one machine are bitwise reproducible.
namespace fadmm::kernels {

enum class Backend { scalar, avx2 };

Backend active_backend();
void force_backend(Backend b);
bool avx2_available();

double dot(const double* a, const double* b, std::size_t n);
double nrm2sq(const double* a, std::size_t n);
// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t n);
// w = a*x + b*y
void waxpby(double a, const double* x, double b, const double* y, double* w, std::size_t n);
// x *= alpha
void scal(double alpha, double* x, std::size_t n);
// w = x - y
void sub(const double* x, const double* y, double* w, std::size_t n);
// out_i = sign(x_i) * max(|x_i| - tau, 0)
void soft_threshold(const double* x, double tau, double* out, std::size_t n);
// out_i = min(max(x_i, lo), hi)
void clamp(const double* x, double lo, double hi, double* out, std::size_t n);

namespace detail {
double dot_scalar(const double* a, const double* b, std::size_t n);
double nrm2sq_scalar(const double* a, std::size_t n);
void axpy_scalar(double alpha, const double* x, double* y, std::size_t n);
void waxpby_scalar(double a, const double* x, double b, const double* y, double* w, std::size_t n);
void scal_scalar(double alpha, double* x, std::size_t n);
void sub_scalar(const double* x, const double* y, double* w, std::size_t n);
void soft_threshold_scalar(const double* x, double tau, double* out, std::size_t n);
void clamp_scalar(const double* x, double lo, double hi, double* out, std::size_t n);

#if defined(__x86_64__) || defined(_M_X64)
#define FADMM_HAVE_AVX2_KERNELS 1
double dot_avx2(const double* a, const double* b, std::size_t n);
double nrm2sq_avx2(const double* a, std::size_t n);
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n);
void waxpby_avx2(double a, const double* x, double b, const double* y, double* w, std::size_t n);
void scal_avx2(double alpha, double* x, std::size_t n);
void sub_avx2(const double* x, const double* y, double* w, std::size_t n);
void soft_threshold_avx2(const double* x, double tau, double* out, std::size_t n);
void clamp_avx2(const double* x, double lo, double hi, double* out, std::size_t n);
#endif
}  // namespace detail

}  // namespace fadmm::kernels
