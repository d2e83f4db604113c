#pragma once

#include <optional>
#include <vector>

#include "detf/frames.hpp"
#include "detf/hadamard.hpp"

namespace detf {

struct PrimePower {
  int p;
  int k;
};
std::optional<PrimePower> prime_power(int q);

// GF(p^k). Elements are integer codes sum c_i p^i of their coefficient vectors over
// the fixed modulus; codes 0 and 1 are the field's zero and one.
class FiniteField {
 public:
  explicit FiniteField(int q);

  int p() const noexcept { return p_; }
  int k() const noexcept { return k_; }
  int q() const noexcept { return q_; }
  // Modulus coefficients, lowest degree first, monic.
  const std::vector<int>& modulus() const noexcept { return modulus_; }

  int add(int x, int y) const { return add_[x * q_ + y]; }
  int sub(int x, int y) const { return add_[x * q_ + neg_[y]]; }
  int mul(int x, int y) const { return mul_[x * q_ + y]; }
  int neg(int x) const { return neg_[x]; }
  int pow(int x, long long e) const;
  int character(int x) const { return chi_[x]; }

 private:
  int p_, k_, q_;
  std::vector<int> modulus_;
  std::vector<int> add_, mul_, neg_, chi_;
};

int quadratic_character(const FiniteField& f, int x);

struct ProjectivePoint {
  int x;
  int y;
  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;
};
// (0,1), (1,1), ..., (q-1,1), (1,0).
std::vector<ProjectivePoint> projective_line(const FiniteField& f);

// I + (chi(ad - bc)) off the diagonal; verified skew Hadamard of order q+1.
IntMatrix paley_hadamard(const FiniteField& f);
IntMatrix double_paley_hadamard(const FiniteField& f);

GramMatrix paley_gram(const FiniteField& f);
GramMatrix double_paley_gram(const FiniteField& f);
GramMatrix conj_double_paley_gram(const FiniteField& f);

}  // namespace detf
