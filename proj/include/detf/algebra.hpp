#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "detf/error.hpp"

namespace detf {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using IntMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr double kDefaultTol = 1e-9;

// A vector over {+1, -1}. Construction rejects any other entry.
class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(std::vector<int> entries);
  SignVector(std::initializer_list<int> entries) : SignVector(std::vector<int>(entries)) {}

  std::size_t size() const noexcept { return v_.size(); }
  int operator[](std::size_t i) const { return v_[i]; }
  const std::vector<int>& entries() const noexcept { return v_; }
  ComplexVector to_complex() const;

  // Word packing used by the search kernels: bit j set iff entry j is -1.
  std::uint64_t to_bits() const;
  static SignVector from_bits(std::uint64_t bits, std::size_t n);

  friend bool operator==(const SignVector&, const SignVector&) = default;
  friend auto operator<=>(const SignVector&, const SignVector&) = default;

 private:
  std::vector<int> v_;
};

// zeta = exp(-2*pi*i*k/m).
struct RootIndex {
  int order = 1;
  int index = 0;

  RootIndex() = default;
  RootIndex(int m, long long k);

  Complex value() const;
  RootIndex conj() const { return RootIndex(order, -static_cast<long long>(index)); }
  // Exponent e with zeta = exp(-2*pi*i*e/target); target must be a multiple of order.
  int exponent_in(int target) const;
  bool is_real() const { return 2 * index % order == 0; }

  friend bool operator==(const RootIndex& a, const RootIndex& b) {
    return static_cast<long long>(a.index) * b.order == static_cast<long long>(b.index) * a.order;
  }
};

// Powers of omega_m = exp(-2*pi*i/m), reduced exactly on the exponent.
Complex root_of_unity(int m, long long k);

ComplexMatrix circulant(const ComplexVector& v);
ComplexMatrix circulant(const SignVector& v);
ComplexMatrix negacirculant(const ComplexVector& v);
ComplexMatrix negacirculant(const SignVector& v);
IntMatrix negacirculant_int(const SignVector& v);
IntMatrix circulant_int(const SignVector& v);

bool is_circulant(const ComplexMatrix& m, double tol = kDefaultTol);
bool is_negacirculant(const ComplexMatrix& m, double tol = kDefaultTol);

// E_zeta = (1/n)(zeta^{j-i}), zeta an n-th root of unity.
ComplexMatrix cyclotomic_idempotent(int n, const RootIndex& zeta);
// N_zeta = (1/n)(zeta^{i-j}), zeta^n = -1.
ComplexMatrix nega_cyclotomic_idempotent(int n, const RootIndex& zeta);

// The scalar a with C E_zeta = a E_zeta.
Complex circulant_eigenvalue(const ComplexMatrix& c, const RootIndex& zeta, double tol = kDefaultTol);
// The scalar a with C N_zeta = a N_zeta.
Complex negacirculant_eigenvalue(const ComplexMatrix& c, const RootIndex& zeta,
                                 double tol = kDefaultTol);

// n-th roots of unity as indices of order n, and the roots of -1 as odd indices of order 2n.
std::vector<RootIndex> roots_of_unity(int n);
std::vector<RootIndex> roots_of_minus_one(int n);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace detf
