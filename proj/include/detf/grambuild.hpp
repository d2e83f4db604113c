#pragma once

#include <map>
#include <vector>

#include "detf/exact.hpp"
#include "detf/frames.hpp"

namespace detf {

// Roots are addressed by index within the root order: n for strict (all n-th roots),
// 2n for projective (odd indices, the roots of -1).
struct SpectralPartition {
  int n = 0;
  DihedralFlavor flavor = DihedralFlavor::Projective;
  std::vector<int> h;
  std::vector<int> f;
  std::vector<int> c;

  int order() const { return flavor == DihedralFlavor::Strict ? n : 2 * n; }
  std::vector<int> roots() const;
  RootIndex root(int index) const { return RootIndex(order(), index); }
  bool is_real_root(int index) const { return 2 * index % order() == 0; }
  int conj_index(int index) const { return (order() - index) % order(); }
};

void validate(const SpectralPartition& p);

struct UnitPair {
  Complex u;
  Complex v;
};

// Unit pairs for the roots in H, keyed by root index. The pair for conj(zeta) must
// be a phase multiple of (v_zeta, u_zeta); for real roots u = 1/sqrt2, v = +-1/sqrt2.
struct UnitPairAssignment {
  std::map<int, UnitPair> pairs;
};

// Exact counterpart: rational (u, v) with |u|^2 + |v|^2 = 1, or a real-root sign.
struct ExactUnitPair {
  GaussianRational u;
  GaussianRational v;
  int real_sign = 0;  // nonzero: the pair (1/sqrt2, real_sign/sqrt2)
};

struct ExactUnitPairAssignment {
  std::map<int, ExactUnitPair> pairs;
  UnitPairAssignment to_float() const;
};

void validate(const SpectralPartition& p, const UnitPairAssignment& pairs, double tol = 1e-9);
void validate(const SpectralPartition& p, const ExactUnitPairAssignment& pairs);

// K_zeta: E_zeta for strict, N_zeta for projective.
ComplexMatrix spectral_kernel(const SpectralPartition& p, int index);

// X = sum_H [[u u*, u v*],[v u*, v v*]] (x) K + sum_F I_2 (x) K.
ComplexMatrix build_tight_idempotent(const SpectralPartition& p, const UnitPairAssignment& pairs);
// Returns 2X, the Gram of a tight frame with unit-norm columns.
GramMatrix build_tight_gram(const SpectralPartition& p, const UnitPairAssignment& pairs);
// X in exact cyclotomic arithmetic.
CycloMatrix build_tight_idempotent_exact(const SpectralPartition& p, const ExactUnitPairAssignment& pairs);

bool is_regular_gram(const SpectralPartition& p);
ComplexMatrix real_part_of_A(const SpectralPartition& p);

// Unit pair in the angle chart (cos t, e^{i phi} sin t), and the forced conjugate partner.
UnitPair unit_pair_from_angles(double theta, double phi);
UnitPair conjugate_partner(const UnitPair& pair);

// Inverse of build_tight_idempotent for the idempotents it produces: reads the
// partition and unit pairs back from the 2x2 component matrices of X.
std::pair<SpectralPartition, UnitPairAssignment> decompose_tight_idempotent(const ComplexMatrix& x,
                                                                            DihedralFlavor flavor,
                                                                            double tol = 1e-8);

}  // namespace detf
