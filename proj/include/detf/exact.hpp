#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "detf/algebra.hpp"

namespace detf {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

template <class T>
struct Gaussian {
  T re{};
  T im{};

  Gaussian() = default;
  Gaussian(T r) : re(std::move(r)) {}
  Gaussian(T r, T i) : re(std::move(r)), im(std::move(i)) {}

  Gaussian conj() const { return {re, -im}; }
  T norm() const { return re * re + im * im; }

  Gaussian& operator+=(const Gaussian& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator-(const Gaussian& a) { return {-a.re, -a.im}; }
  friend Gaussian operator*(const Gaussian& a, const Gaussian& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  Gaussian& operator*=(const Gaussian& o) { return *this = *this * o; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re == b.re && a.im == b.im; }
};

using GaussInt = Gaussian<std::int64_t>;
using GaussianBig = Gaussian<BigInt>;
using GaussianRational = Gaussian<BigRational>;

Complex to_complex(const GaussianRational& z);
std::string to_string(const GaussianBig& z);

// Dense row-major matrix over an exact ring.
template <class T>
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ExactMatrix identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  ExactMatrix adjoint() const {
    ExactMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c).conj();
    return out;
  }

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols_ != b.rows_) fail(ErrorKind::InvalidInput, "exact matrix product shape mismatch");
    ExactMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }
  friend ExactMatrix operator+(ExactMatrix a, const ExactMatrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend ExactMatrix operator-(ExactMatrix a, const ExactMatrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ExactComplexMatrix = ExactMatrix<GaussianRational>;
using GaussIntMatrix = ExactMatrix<GaussInt>;

ComplexMatrix to_complex(const ExactComplexMatrix& m);

// Characteristic polynomial det(xI - A), coefficients from x^0 up to the leading 1.
// Division-free (Berkowitz); runs in checked 128-bit arithmetic and falls back to
// arbitrary precision on overflow.
std::vector<GaussianBig> characteristic_polynomial(const GaussIntMatrix& a);

// Integer coefficients of the L-th cyclotomic polynomial, lowest degree first.
const std::vector<std::int64_t>& cyclotomic_polynomial(int order);

// Matrix over Q(omega_L), omega_L = exp(-2*pi*i/L). Each entry is an integer
// polynomial in omega_L of degree < L; the whole matrix shares one denominator.
class CycloMatrix {
 public:
  CycloMatrix(std::size_t rows, std::size_t cols, int order, std::int64_t denominator = 1);

  static CycloMatrix identity(std::size_t n, int order);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  int order() const noexcept { return order_; }
  std::int64_t denominator() const noexcept { return denom_; }

  // Adds coef * omega_L^exponent to entry (r, c) (numerator scale).
  void add(std::size_t r, std::size_t c, long long exponent, std::int64_t coef);
  // Adds (re + i*im) to entry (r, c) numerator.
  void add_gaussian(std::size_t r, std::size_t c, std::int64_t re, std::int64_t im);
  std::int64_t coefficient(std::size_t r, std::size_t c, int exponent) const;

  CycloMatrix adjoint() const;
  CycloMatrix operator*(const CycloMatrix& o) const;
  CycloMatrix operator+(const CycloMatrix& o) const;
  CycloMatrix operator-(const CycloMatrix& o) const;
  CycloMatrix scaled_denominator(std::int64_t d) const;

  // Exact equality as elements of Q(omega_L).
  bool equals(const CycloMatrix& o) const;
  bool is_zero() const;
  // Exact trace reduced modulo the cyclotomic polynomial; true iff it is the rational t.
  bool trace_equals(const BigRational& t) const;

  ComplexMatrix to_complex() const;

 private:
  std::vector<__int128> reduced_entry(std::size_t idx) const;

  std::size_t rows_;
  std::size_t cols_;
  int order_;
  std::int64_t denom_;
  std::vector<std::int64_t> coef_;
};

}  // namespace detf
