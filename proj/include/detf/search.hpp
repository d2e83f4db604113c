#pragma once

#include <optional>
#include <string>
#include <vector>

#include "detf/frames.hpp"
#include "detf/hadamard.hpp"

namespace detf {

// N(k) = sum_j v_j v_{j+k} with a sign flip on wrap-around, k = 0..n-1.
std::vector<int> negacyclic_autocorrelation(const SignVector& v);
std::vector<int> cyclic_autocorrelation(const SignVector& v);

// [v1..vn] -> [-vn, v1, ..., v(n-1)]
SignVector nega_rotate(const SignVector& v);
// Least element of the nega-rotation orbit, comparing entries with +1 < -1.
SignVector canonicalize_b(const SignVector& v);

// All skew a and canonical b with PP^T + QQ^T = 2nI, sorted by (a_hex, b_hex).
std::vector<BlockSkewHadamard> enumerate(int n, int jobs = 1);
// Direct matrix-product check over the same candidate space; slow, for cross-checks.
std::vector<BlockSkewHadamard> enumerate_naive(int n);

struct CirculantPair {
  SignVector a;
  SignVector b;
};
// Circulant skew P and circulant Q with PP^T + QQ^T = 2nI.
std::vector<CirculantPair> enumerate_2circulant(int n);

enum PaleyTag : unsigned { kTagP = 1, kTagDP = 2, kTagCDP = 4 };

struct SymmetryType {
  unsigned tags = 0;
  bool classified = true;

  std::string str() const;
  static SymmetryType parse(const std::string& s);
  friend bool operator==(const SymmetryType&, const SymmetryType&) = default;
};

struct SolutionRecord {
  int n = 0;
  std::string a_hex;
  std::string b_hex;
  SymmetryType type;
  int class_id = 0;

  BlockSkewHadamard solution() const;
  friend bool operator==(const SolutionRecord&, const SolutionRecord&) = default;
};

std::string format_record(const SolutionRecord& r);
SolutionRecord parse_record(const std::string& line);
std::vector<SolutionRecord> read_records(std::istream& in);

struct PaleyReference {
  PaleyTag tag;
  GramMatrix gram;
};
// The Paley-type Grams of size 2n that exist for this n.
std::vector<PaleyReference> paley_references(int n);
SymmetryType paley_type(const GramMatrix& g, const std::vector<PaleyReference>& refs);

// Deduplicates solutions of one n into switching classes and tags them.
std::vector<SolutionRecord> classify_solutions(int n, const std::vector<BlockSkewHadamard>& sols, int jobs = 1);
std::vector<SolutionRecord> classify(int n, int jobs = 1);

}  // namespace detf
