#include <immintrin.h>

#include <cmath>

#include "detf/kernels.hpp"

namespace detf::kernels::avx2 {

namespace {

inline __m256i popcount32(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1, 2, 1, 2,
                                       2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i nib = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, nib);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), nib);
  const __m256i c8 = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  const __m256i c16 = _mm256_maddubs_epi16(c8, _mm256_set1_epi8(1));
  return _mm256_madd_epi16(c16, _mm256_set1_epi16(1));
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

}  // namespace

void negacyclic_autocorr(const std::uint32_t* words, std::size_t count, int n, int max_shift,
                         std::int8_t* out) {
  std::size_t w = 0;
  alignas(32) std::int32_t lane[8];
  for (; w + 8 <= count; w += 8) {
    const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + w));
    for (int k = 1; k <= max_shift; ++k) {
      const __m256i low = _mm256_set1_epi32(static_cast<int>((std::uint32_t{1} << (n - k)) - 1));
      const __m256i high =
          _mm256_set1_epi32(static_cast<int>(((std::uint32_t{1} << k) - 1) << (n - k)));
      const __m256i s1 = _mm256_srl_epi32(x, _mm_cvtsi32_si128(k));
      const __m256i s2 = _mm256_sll_epi32(x, _mm_cvtsi32_si128(n - k));
      const __m256i d1 = popcount32(_mm256_and_si256(_mm256_xor_si256(x, s1), low));
      const __m256i d2 = popcount32(_mm256_and_si256(_mm256_xor_si256(x, s2), high));
      const __m256i diff = _mm256_slli_epi32(_mm256_sub_epi32(d2, d1), 1);
      const __m256i v = _mm256_add_epi32(diff, _mm256_set1_epi32(n - 2 * k));
      _mm256_store_si256(reinterpret_cast<__m256i*>(lane), v);
      for (int l = 0; l < 8; ++l) out[(w + l) * max_shift + (k - 1)] = static_cast<std::int8_t>(lane[l]);
    }
  }
  if (w < count) scalar::negacyclic_autocorr(words + w, count - w, n, max_shift, out + w * max_shift);
}

void complex_matvec(const double* w_re, const double* w_im, std::size_t rows, std::size_t cols,
                    const double* x_re, const double* x_im, double* y_re, double* y_im) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double* ar = w_re + r * cols;
    const double* ai = w_im + r * cols;
    __m256d accr = _mm256_setzero_pd(), acci = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 4 <= cols; c += 4) {
      const __m256d wr = _mm256_loadu_pd(ar + c), wi = _mm256_loadu_pd(ai + c);
      const __m256d xr = _mm256_loadu_pd(x_re + c), xi = _mm256_loadu_pd(x_im + c);
      accr = _mm256_fmadd_pd(wr, xr, accr);
      accr = _mm256_fnmadd_pd(wi, xi, accr);
      acci = _mm256_fmadd_pd(wr, xi, acci);
      acci = _mm256_fmadd_pd(wi, xr, acci);
    }
    double sr = hsum(accr), si = hsum(acci);
    for (; c < cols; ++c) {
      sr += ar[c] * x_re[c] - ai[c] * x_im[c];
      si += ar[c] * x_im[c] + ai[c] * x_re[c];
    }
    y_re[r] = sr;
    y_im[r] = si;
  }
}

double sum_abs_pow(const double* re, const double* im, std::size_t count, double p) {
  const int ip = static_cast<int>(p);
  if (!(ip == p && ip >= 1 && ip <= 8)) return scalar::sum_abs_pow(re, im, count, p);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d r = _mm256_loadu_pd(re + i), m = _mm256_loadu_pd(im + i);
    const __m256d r2 = _mm256_fmadd_pd(m, m, _mm256_mul_pd(r, r));
    __m256d t = (ip & 1) ? _mm256_sqrt_pd(r2) : _mm256_set1_pd(1.0);
    for (int e = 0; e < ip / 2; ++e) t = _mm256_mul_pd(t, r2);
    acc = _mm256_add_pd(acc, t);
  }
  double s = hsum(acc);
  if (i < count) s += scalar::sum_abs_pow(re + i, im + i, count - i, p);
  return s;
}

}  // namespace detf::kernels::avx2
