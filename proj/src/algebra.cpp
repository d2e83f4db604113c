#include "detf/algebra.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace detf {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::InvalidPartition: return "invalid-partition";
    case ErrorKind::InvalidPairs: return "invalid-pairs";
    case ErrorKind::NotFactorable: return "not-factorable";
    case ErrorKind::NotDihedralEtf: return "not-dihedral-etf";
    case ErrorKind::NotEtfGram: return "not-etf-gram";
    case ErrorKind::AmbiguousEntry: return "ambiguous-entry";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::ConstructionError: return "construction-error";
  }
  return "error";
}

SignVector::SignVector(std::vector<int> entries) : v_(std::move(entries)) {
  if (v_.empty()) fail(ErrorKind::InvalidInput, "sign vector must be non-empty");
  for (int x : v_)
    if (x != 1 && x != -1) fail(ErrorKind::InvalidInput, "sign vector entries must be +1 or -1");
}

ComplexVector SignVector::to_complex() const {
  ComplexVector out(v_.size());
  for (std::size_t i = 0; i < v_.size(); ++i) out[i] = v_[i];
  return out;
}

std::uint64_t SignVector::to_bits() const {
  if (v_.size() > 64) fail(ErrorKind::Unsupported, "sign vector longer than 64");
  std::uint64_t bits = 0;
  for (std::size_t j = 0; j < v_.size(); ++j)
    if (v_[j] < 0) bits |= std::uint64_t{1} << j;
  return bits;
}

SignVector SignVector::from_bits(std::uint64_t bits, std::size_t n) {
  std::vector<int> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = (bits >> j) & 1 ? -1 : 1;
  return SignVector(std::move(v));
}

static long long mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

RootIndex::RootIndex(int m, long long k) : order(m) {
  if (m < 1) fail(ErrorKind::InvalidInput, "root order must be positive");
  index = static_cast<int>(mod(k, m));
}

Complex RootIndex::value() const { return root_of_unity(order, index); }

int RootIndex::exponent_in(int target) const {
  if (target % order != 0) fail(ErrorKind::InvalidInput, "root order does not divide target order");
  return index * (target / order);
}

Complex root_of_unity(int m, long long k) {
  long long r = mod(k, m);
  // Exact values on the axes keep 0/1 entries exact in floating matrices.
  if (r == 0) return {1.0, 0.0};
  if (2 * r == m) return {-1.0, 0.0};
  if (4 * r == m) return {0.0, -1.0};
  if (4 * r == 3 * m) return {0.0, 1.0};
  double t = -2.0 * std::numbers::pi * static_cast<double>(r) / m;
  return {std::cos(t), std::sin(t)};
}

ComplexMatrix circulant(const ComplexVector& v) {
  const Eigen::Index n = v.size();
  if (n == 0) fail(ErrorKind::InvalidInput, "empty vector");
  ComplexMatrix c(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) c(i, j) = v[(j - i + n) % n];
  return c;
}

ComplexMatrix negacirculant(const ComplexVector& v) {
  const Eigen::Index n = v.size();
  if (n == 0) fail(ErrorKind::InvalidInput, "empty vector");
  ComplexMatrix c(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) c(i, j) = j >= i ? v[j - i] : -v[n + j - i];
  return c;
}

ComplexMatrix circulant(const SignVector& v) { return circulant(v.to_complex()); }
ComplexMatrix negacirculant(const SignVector& v) { return negacirculant(v.to_complex()); }

IntMatrix circulant_int(const SignVector& v) {
  const int n = static_cast<int>(v.size());
  IntMatrix c(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = v[(j - i + n) % n];
  return c;
}

IntMatrix negacirculant_int(const SignVector& v) {
  const int n = static_cast<int>(v.size());
  IntMatrix c(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = j >= i ? v[j - i] : -v[n + j - i];
  return c;
}

bool is_circulant(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) fail(ErrorKind::InvalidInput, "matrix must be square");
  if (m.rows() == 0) return true;
  ComplexVector row = m.row(0).transpose();
  return max_abs_diff(circulant(row), m) <= tol;
}

bool is_negacirculant(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) fail(ErrorKind::InvalidInput, "matrix must be square");
  if (m.rows() == 0) return true;
  ComplexVector row = m.row(0).transpose();
  return max_abs_diff(negacirculant(row), m) <= tol;
}

ComplexMatrix cyclotomic_idempotent(int n, const RootIndex& zeta) {
  if (n < 1) fail(ErrorKind::InvalidInput, "n must be positive");
  // zeta^n = 1 iff zeta's order divides n.
  if (static_cast<long long>(zeta.index) * n % zeta.order != 0)
    fail(ErrorKind::InvalidInput, "zeta is not an n-th root of unity");
  const int e = static_cast<int>(static_cast<long long>(zeta.index) * n / zeta.order);
  ComplexMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = root_of_unity(n, static_cast<long long>(e) * (j - i)) / double(n);
  return out;
}

ComplexMatrix nega_cyclotomic_idempotent(int n, const RootIndex& zeta) {
  if (n < 1) fail(ErrorKind::InvalidInput, "n must be positive");
  // zeta^n = -1 iff index*n/order is an odd half-integer multiple, i.e. 2*index*n = order*(odd).
  const long long twice = 2LL * zeta.index * n;
  if (twice % zeta.order != 0 || (twice / zeta.order) % 2 == 0)
    fail(ErrorKind::InvalidInput, "zeta^n != -1");
  const long long e = 2LL * zeta.index * n / zeta.order;  // zeta = omega_{2n}^e
  ComplexMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = root_of_unity(2 * n, e * (i - j)) / double(n);
  return out;
}

static Complex eigenvalue_by_residual(const ComplexMatrix& c, const ComplexMatrix& e, Complex a,
                                      double tol) {
  if (max_abs_diff(c * e, a * e) > tol * std::max(1.0, c.cwiseAbs().maxCoeff()) * c.rows())
    fail(ErrorKind::ConstructionError, "eigenvalue residual check failed");
  return a;
}

Complex circulant_eigenvalue(const ComplexMatrix& c, const RootIndex& zeta, double tol) {
  if (!is_circulant(c, tol)) fail(ErrorKind::InvalidInput, "matrix is not circulant");
  const int n = static_cast<int>(c.rows());
  ComplexMatrix e = cyclotomic_idempotent(n, zeta);
  Complex a = 0;
  for (int k = 0; k < n; ++k) a += c(0, k) * root_of_unity(zeta.order, -static_cast<long long>(zeta.index) * k);
  return eigenvalue_by_residual(c, e, a, std::max(tol, 1e-9));
}

Complex negacirculant_eigenvalue(const ComplexMatrix& c, const RootIndex& zeta, double tol) {
  if (!is_negacirculant(c, tol)) fail(ErrorKind::InvalidInput, "matrix is not negacirculant");
  const int n = static_cast<int>(c.rows());
  ComplexMatrix e = nega_cyclotomic_idempotent(n, zeta);
  Complex a = 0;
  for (int k = 0; k < n; ++k) a += c(0, k) * root_of_unity(zeta.order, static_cast<long long>(zeta.index) * k);
  return eigenvalue_by_residual(c, e, a, std::max(tol, 1e-9));
}

std::vector<RootIndex> roots_of_unity(int n) {
  std::vector<RootIndex> out;
  for (int k = 0; k < n; ++k) out.emplace_back(n, k);
  return out;
}

std::vector<RootIndex> roots_of_minus_one(int n) {
  std::vector<RootIndex> out;
  for (int k = 1; k < 2 * n; k += 2) out.emplace_back(2 * n, k);
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace detf
