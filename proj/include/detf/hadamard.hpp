#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "detf/algebra.hpp"
#include "detf/exact.hpp"
#include "detf/frames.hpp"

namespace detf {

bool is_hadamard(const IntMatrix& h);
bool is_skew_hadamard(const IntMatrix& h);

// a[0] = 1 and a[k] = a[n-k]: exactly the condition for negc(a) + negc(a)^T = 2I.
bool satisfies_skew_constraint(const SignVector& a);

IntMatrix assemble(const SignVector& a, const SignVector& b);

// H = [P, Q; -Q^T, P^T] with P = negc(a), Q = negc(b), validated on construction.
class BlockSkewHadamard {
 public:
  BlockSkewHadamard(SignVector a, SignVector b);

  int n() const noexcept { return static_cast<int>(a_.size()); }
  const SignVector& a() const noexcept { return a_; }
  const SignVector& b() const noexcept { return b_; }
  IntMatrix matrix() const { return assemble(a_, b_); }

  friend bool operator==(const BlockSkewHadamard&, const BlockSkewHadamard&) = default;

 private:
  SignVector a_;
  SignVector b_;
};

// G = I + (i / sqrt(2n-1)) (H - I).
GramMatrix gram_lemma_shm(const IntMatrix& h);
// G = I + (1 / sqrt(2n-1)) [[i(P-I), Q], [Q^T, i(R-I)]] for H = [P, Q; -Q^T, R].
GramMatrix gram_M(const IntMatrix& h);

// The exact view S of an ETF(2n, n) Gram G = I + S/sqrt(2n-1) passes iff S is Hermitian
// with zero diagonal, unit off-diagonal entries and S^2 = (2n-1) I, which is (G/2)^2 = G/2.
bool is_exact_etf_view(const GaussIntMatrix& s);

// [[I+C, I+C], [-I+C, I-C]] for H = I + C.
IntMatrix double_hadamard(const IntMatrix& h);

struct ExtractedPQ {
  IntMatrix p;
  IntMatrix q;
  Eigen::MatrixXd p_approx;
  Eigen::MatrixXd q_approx;
  double residual = 0;
};
// P = I - i sqrt(2n-1)(A - I), Q = sqrt(2n-1) B, rounded.
ExtractedPQ extract_PQ(const GramMatrix& g);

enum class ExactifyCheck { Shape, Rounding, Skewness, BlockStructure, Orthogonality };
const char* to_string(ExactifyCheck c);

struct ExactifyResult {
  std::optional<BlockSkewHadamard> value;
  ExactifyCheck failed = ExactifyCheck::Shape;
  std::string detail;

  bool ok() const { return value.has_value(); }
};
// Rounds to +-1 and checks skewness, negacirculant blocks and PP^T + QQ^T = 2nI, in
// that order. Throws ambiguous-entry when an entry lies within 0.05 of 0.
ExactifyResult exactify(const Eigen::MatrixXd& h_approx);

SignVector hex_decode(std::string_view s, int n);
std::string hex_encode(const SignVector& v);

}  // namespace detf
