#include <bit>
#include <cmath>

#include "detf/kernels.hpp"

namespace detf::kernels::scalar {

void negacyclic_autocorr(const std::uint32_t* words, std::size_t count, int n, int max_shift,
                         std::int8_t* out) {
  for (std::size_t w = 0; w < count; ++w) {
    const std::uint32_t x = words[w];
    for (int k = 1; k <= max_shift; ++k) {
      // Disagreements on the non-wrapping pairs (j, j+k) and on the wrapped pairs.
      const std::uint32_t low = (std::uint32_t{1} << (n - k)) - 1;
      const std::uint32_t high = ((std::uint32_t{1} << k) - 1) << (n - k);
      const int d1 = std::popcount((x ^ (x >> k)) & low);
      const int d2 = std::popcount((x ^ (x << (n - k))) & high);
      out[w * max_shift + (k - 1)] = static_cast<std::int8_t>((n - 2 * k) - 2 * d1 + 2 * d2);
    }
  }
}

void complex_matvec(const double* w_re, const double* w_im, std::size_t rows, std::size_t cols,
                    const double* x_re, const double* x_im, double* y_re, double* y_im) {
  for (std::size_t r = 0; r < rows; ++r) {
    double sr = 0, si = 0;
    const double* ar = w_re + r * cols;
    const double* ai = w_im + r * cols;
    for (std::size_t c = 0; c < cols; ++c) {
      sr += ar[c] * x_re[c] - ai[c] * x_im[c];
      si += ar[c] * x_im[c] + ai[c] * x_re[c];
    }
    y_re[r] = sr;
    y_im[r] = si;
  }
}

double sum_abs_pow(const double* re, const double* im, std::size_t count, double p) {
  const int ip = static_cast<int>(p);
  double s = 0;
  if (ip == p && ip >= 1 && ip <= 8) {
    for (std::size_t i = 0; i < count; ++i) {
      const double r2 = re[i] * re[i] + im[i] * im[i];
      double t = (ip & 1) ? std::sqrt(r2) : 1.0;
      for (int e = 0; e < ip / 2; ++e) t *= r2;
      s += t;
    }
    return s;
  }
  for (std::size_t i = 0; i < count; ++i) s += std::pow(std::hypot(re[i], im[i]), p);
  return s;
}

}  // namespace detf::kernels::scalar
