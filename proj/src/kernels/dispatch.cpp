#include <atomic>

#include "detf/kernels.hpp"

namespace detf::kernels {

namespace {

Backend detect() {
#if defined(DETF_HAVE_AVX2_TU)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma") && __builtin_cpu_supports("popcnt"))
    return Backend::Avx2;
#endif
  return Backend::Scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{detect()};
  return b;
}

}  // namespace

Backend active_backend() { return current().load(std::memory_order_relaxed); }

bool backend_available(Backend b) { return b == Backend::Scalar || detect() == Backend::Avx2; }

void set_backend(Backend b) {
  if (backend_available(b)) current().store(b, std::memory_order_relaxed);
}

const char* backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

void negacyclic_autocorr(const std::uint32_t* words, std::size_t count, int n, int max_shift,
                         std::int8_t* out) {
#if defined(DETF_HAVE_AVX2_TU)
  if (active_backend() == Backend::Avx2) return avx2::negacyclic_autocorr(words, count, n, max_shift, out);
#endif
  scalar::negacyclic_autocorr(words, count, n, max_shift, out);
}

void complex_matvec(const double* w_re, const double* w_im, std::size_t rows, std::size_t cols,
                    const double* x_re, const double* x_im, double* y_re, double* y_im) {
#if defined(DETF_HAVE_AVX2_TU)
  if (active_backend() == Backend::Avx2)
    return avx2::complex_matvec(w_re, w_im, rows, cols, x_re, x_im, y_re, y_im);
#endif
  scalar::complex_matvec(w_re, w_im, rows, cols, x_re, x_im, y_re, y_im);
}

double sum_abs_pow(const double* re, const double* im, std::size_t count, double p) {
#if defined(DETF_HAVE_AVX2_TU)
  if (active_backend() == Backend::Avx2) return avx2::sum_abs_pow(re, im, count, p);
#endif
  return scalar::sum_abs_pow(re, im, count, p);
}

}  // namespace detf::kernels
