#pragma once

#include <cstddef>
#include <cstdint>

namespace detf::kernels {

enum class Backend { Scalar, Avx2 };

// The backend chosen at startup: AVX2 when the CPU reports it, scalar otherwise.
Backend active_backend();
bool backend_available(Backend b);
// Overrides the active backend (tests use this to compare variants).
void set_backend(Backend b);
const char* backend_name(Backend b);

// Negacyclic autocorrelations of packed sign vectors of length n <= 32 (bit j set iff
// entry j is -1). For each word w, writes N_w(k) for k = 1..max_shift into
// out[w * max_shift + (k - 1)].
void negacyclic_autocorr(const std::uint32_t* words, std::size_t count, int n, int max_shift,
                         std::int8_t* out);

// y = W x for a complex row-major rows x cols matrix W and complex x, all in split
// real/imaginary arrays.
void complex_matvec(const double* w_re, const double* w_im, std::size_t rows, std::size_t cols,
                    const double* x_re, const double* x_im, double* y_re, double* y_im);

// Sum of |z_i|^p. Integer p in [1, 8] takes the vectorised route; other p use std::pow.
double sum_abs_pow(const double* re, const double* im, std::size_t count, double p);

namespace scalar {
void negacyclic_autocorr(const std::uint32_t* words, std::size_t count, int n, int max_shift,
                         std::int8_t* out);
void complex_matvec(const double* w_re, const double* w_im, std::size_t rows, std::size_t cols,
                    const double* x_re, const double* x_im, double* y_re, double* y_im);
double sum_abs_pow(const double* re, const double* im, std::size_t count, double p);
}  // namespace scalar

namespace avx2 {
void negacyclic_autocorr(const std::uint32_t* words, std::size_t count, int n, int max_shift,
                         std::int8_t* out);
void complex_matvec(const double* w_re, const double* w_im, std::size_t rows, std::size_t cols,
                    const double* x_re, const double* x_im, double* y_re, double* y_im);
double sum_abs_pow(const double* re, const double* im, std::size_t count, double p);
}  // namespace avx2

}  // namespace detf::kernels
