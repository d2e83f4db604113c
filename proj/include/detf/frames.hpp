#pragma once

#include <optional>

#include "detf/algebra.hpp"
#include "detf/exact.hpp"

namespace detf {

enum class DihedralFlavor { Strict, Projective };

const char* to_string(DihedralFlavor f);

// n x N matrix whose columns are unit vectors.
class Configuration {
 public:
  explicit Configuration(ComplexMatrix phi, double tol = kDefaultTol);

  int dimension() const noexcept { return static_cast<int>(phi_.rows()); }
  int count() const noexcept { return static_cast<int>(phi_.cols()); }
  const ComplexMatrix& matrix() const noexcept { return phi_; }

 private:
  ComplexMatrix phi_;
};

// Hermitian matrix with unit diagonal. The optional exact view S satisfies
// G = I + S / sqrt(N - 1) with Gaussian-integer S (the ETF(2n, n) family).
class GramMatrix {
 public:
  explicit GramMatrix(ComplexMatrix g, double tol = kDefaultTol);
  GramMatrix(ComplexMatrix g, GaussIntMatrix exact, double tol = kDefaultTol);

  int size() const noexcept { return static_cast<int>(g_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return g_; }
  const std::optional<GaussIntMatrix>& exact() const noexcept { return exact_; }
  Complex operator()(int r, int c) const { return g_(r, c); }

  GramMatrix conjugate() const;

 private:
  ComplexMatrix g_;
  std::optional<GaussIntMatrix> exact_;
};

GramMatrix gram(const Configuration& phi);
double welch_bound(int big_n, int n);
double coherence(const Configuration& phi);
double coherence(const GramMatrix& g);

struct Tightness {
  bool tight = false;
  double constant = 0;
};
Tightness is_tight(const Configuration& phi, double tol = 1e-8);

// Relative spread (max - min) / mean of the off-diagonal Gram moduli.
double angle_spread(const GramMatrix& g);
bool is_etf(const Configuration& phi, double rel_tol = 1e-7);
// Same test on a Gram matrix of rank n: G^2 = (N/n) G and equal off-diagonal moduli.
bool is_etf_gram(const GramMatrix& g, int n, double rel_tol = 1e-7);

double frame_potential(const Configuration& phi, double p);
double frame_potential(const GramMatrix& g, double p);

// The matrices (M, T) generating the strict or projective dihedral action on C^n.
std::pair<ComplexMatrix, ComplexMatrix> dihedral_generators(int n, DihedralFlavor flavor);
// Columns [v, Mv, ..., M^{n-1}v, Tv, MTv, ..., M^{n-1}Tv]; v is normalised first.
Configuration dihedral_orbit(const ComplexVector& v, DihedralFlavor flavor);

bool is_regular(const Configuration& phi, double tol = 1e-8);

enum class GramStructure { Strict, Projective, Neither };
const char* to_string(GramStructure s);

struct GramBlocks {
  GramStructure flavor = GramStructure::Neither;
  // Set when both block structures hold (e.g. the identity); flavor is then Strict.
  bool ambiguous = false;
  ComplexMatrix a;
  ComplexMatrix b;
};
GramBlocks analyze_gram_structure(const GramMatrix& g, double tol = kDefaultTol);

// Phi with Phi* Phi = G, from the top-n spectral factors of G (requires G/2 idempotent of rank n).
Configuration configuration_from_gram(const GramMatrix& g, int n, double tol = 1e-8);

}  // namespace detf
