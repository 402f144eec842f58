#include "fadmm/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace fadmm::kernels {

namespace {

struct Table {
  double (*dot)(const double*, const double*, std::size_t);
  double (*nrm2sq)(const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*waxpby)(double, const double*, double, const double*, double*, std::size_t);
  void (*scal)(double, double*, std::size_t);
  void (*sub)(const double*, const double*, double*, std::size_t);
  void (*soft_threshold)(const double*, double, double*, std::size_t);
  void (*clamp)(const double*, double, double, double*, std::size_t);
};

constexpr Table kScalar = {
    detail::dot_scalar,  detail::nrm2sq_scalar, detail::axpy_scalar,
    detail::waxpby_scalar, detail::scal_scalar, detail::sub_scalar,
    detail::soft_threshold_scalar, detail::clamp_scalar,
};

#ifdef FADMM_HAVE_AVX2_KERNELS
constexpr Table kAvx2 = {
    detail::dot_avx2,  detail::nrm2sq_avx2, detail::axpy_avx2,
    detail::waxpby_avx2, detail::scal_avx2, detail::sub_avx2,
    detail::soft_threshold_avx2, detail::clamp_avx2,
};
#endif

Backend g_backend = Backend::scalar;
const Table* g_table = &kScalar;

Backend probe() {
#ifdef FADMM_HAVE_AVX2_KERNELS
  if (const char* env = std::getenv("FADMM_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && avx2_available()) return Backend::avx2;
    return Backend::scalar;
  }
  if (avx2_available()) return Backend::avx2;
#endif
  return Backend::scalar;
}

const bool g_initialized = [] {
  force_backend(probe());
  return true;
}();

}  // namespace

bool avx2_available() {
#ifdef FADMM_HAVE_AVX2_KERNELS
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active_backend() { return g_backend; }

void force_backend(Backend b) {
#ifdef FADMM_HAVE_AVX2_KERNELS
  if (b == Backend::avx2 && avx2_available()) {
    g_backend = Backend::avx2;
    g_table = &kAvx2;
    return;
  }
#endif
  g_backend = Backend::scalar;
  g_table = &kScalar;
}

double dot(const double* a, const double* b, std::size_t n) { return g_table->dot(a, b, n); }
double nrm2sq(const double* a, std::size_t n) { return g_table->nrm2sq(a, n); }
void axpy(double alpha, const double* x, double* y, std::size_t n) {
  g_table->axpy(alpha, x, y, n);
}
void waxpby(double a, const double* x, double b, const double* y, double* w, std::size_t n) {
  g_table->waxpby(a, x, b, y, w, n);
}
void scal(double alpha, double* x, std::size_t n) { g_table->scal(alpha, x, n); }
void sub(const double* x, const double* y, double* w, std::size_t n) { g_table->sub(x, y, w, n); }
void soft_threshold(const double* x, double tau, double* out, std::size_t n) {
  g_table->soft_threshold(x, tau, out, n);
}
void clamp(const double* x, double lo, double hi, double* out, std::size_t n) {
  g_table->clamp(x, lo, hi, out, n);
}

}  // namespace fadmm::kernels
