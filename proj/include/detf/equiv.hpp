#pragma once

#include <optional>
#include <string>
#include <vector>

#include "detf/exact.hpp"
#include "detf/frames.hpp"

namespace detf {

// A Gram conjugated so that the anchor sits at position 0 and its row is positive real.
// ng[i][j] = c_i G[order[i]][order[j]] conj(c_j) with unit Gaussian-integer phases c.
struct NormalizedGram {
  int size = 0;
  std::vector<int> order;
  std::vector<GaussInt> phases;
  GaussIntMatrix exact;  // sqrt(N-1)(NG - I), entries in {0, +-1, +-i}

  ComplexMatrix to_complex() const;
};

// Exact view of an ETF(2n, n) Gram: the stored one, or sqrt(N-1)(G - I) rounded and checked.
GaussIntMatrix exact_view(const GramMatrix& g);

NormalizedGram normalize(const GramMatrix& g, int anchor);
NormalizedGram normalize(const GaussIntMatrix& exact, int anchor);
// Moves position `second` of an already normalized Gram to position 1.
NormalizedGram with_second(const NormalizedGram& ng, int second);

// Counts of the values in the first row of G' (the Gram without the anchor, i.e. row 1 of
// ng beyond the diagonal) and the characteristic polynomial of the exact view on each
// value class. Encoded as a canonical string.
struct Signature {
  std::string key;
  friend bool operator==(const Signature&, const Signature&) = default;
  friend auto operator<=>(const Signature&, const Signature&) = default;
};
Signature invariant_signature(const NormalizedGram& ng);

// G1[s(j)][s(k)] = d_{s(j)} G0[j][k] conj(d_{s(k)}).
struct EquivalenceCertificate {
  std::vector<int> sigma;
  std::vector<int> quarter_turns;  // d_r = i^{quarter_turns[r]}

  std::vector<Complex> phases() const;
  EquivalenceCertificate inverse() const;
  // This certificate followed by `next`.
  EquivalenceCertificate then(const EquivalenceCertificate& next) const;
  static EquivalenceCertificate identity(int n);
};

GramMatrix apply_certificate(const GramMatrix& g0, const EquivalenceCertificate& cert);
bool verify_certificate(const GramMatrix& g0, const GramMatrix& g1, const EquivalenceCertificate& cert);

struct EquivalenceResult {
  bool equivalent = false;
  std::optional<EquivalenceCertificate> certificate;
};
EquivalenceResult are_equivalent(const GramMatrix& g0, const GramMatrix& g1);

// Multiset of signatures over all second pivots with anchor 0. Equal for equivalent
// vertex-transitive Grams; used to bucket candidates before pairwise tests.
std::string anchor_invariant(const GramMatrix& g);

}  // namespace detf
