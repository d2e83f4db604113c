#include "detf/hadamard.hpp"

#include <cctype>
#include <cmath>

namespace detf {

namespace {

void require_signs(const IntMatrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0) fail(ErrorKind::InvalidInput, "matrix must be square and non-empty");
  for (Eigen::Index i = 0; i < h.size(); ++i)
    if (h.data()[i] != 1 && h.data()[i] != -1) fail(ErrorKind::InvalidInput, "entries must be +1 or -1");
}

// Validates skew Hadamard input and returns the order.
int require_skew(const IntMatrix& h) {
  if (!is_skew_hadamard(h)) fail(ErrorKind::InvalidInput, "not a skew Hadamard matrix");
  const int m = static_cast<int>(h.rows());
  if (m != 2 && m % 4 != 0) fail(ErrorKind::InvalidInput, "skew Hadamard order must be 2 or a multiple of 4");
  return m;
}

GramMatrix gram_from_view(GaussIntMatrix s) {
  const std::size_t m = s.rows();
  const double scale = 1.0 / std::sqrt(double(m) - 1.0);
  ComplexMatrix g = ComplexMatrix::Identity(m, m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) g(r, c) += Complex(double(s(r, c).re), double(s(r, c).im)) * scale;
  return GramMatrix(std::move(g), std::move(s));
}

}  // namespace

bool is_hadamard(const IntMatrix& h) {
  require_signs(h);
  const IntMatrix prod = h * h.transpose();
  return prod == IntMatrix::Identity(h.rows(), h.rows()) * static_cast<int>(h.rows());
}

bool is_skew_hadamard(const IntMatrix& h) {
  require_signs(h);
  const IntMatrix sum = h + h.transpose();
  return sum == IntMatrix::Identity(h.rows(), h.rows()) * 2 && is_hadamard(h);
}

bool satisfies_skew_constraint(const SignVector& a) {
  const std::size_t n = a.size();
  if (a[0] != 1) return false;
  for (std::size_t k = 1; k < n; ++k)
    if (a[k] != a[n - k]) return false;
  return true;
}

IntMatrix assemble(const SignVector& a, const SignVector& b) {
  if (a.size() != b.size()) fail(ErrorKind::InvalidInput, "a and b must have equal length");
  const int n = static_cast<int>(a.size());
  const IntMatrix p = negacirculant_int(a), q = negacirculant_int(b);
  IntMatrix h(2 * n, 2 * n);
  h << p, q, -q.transpose(), p.transpose();
  return h;
}

BlockSkewHadamard::BlockSkewHadamard(SignVector a, SignVector b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.size() != b_.size()) fail(ErrorKind::InvalidInput, "a and b must have equal length");
  if (a_.size() % 2) fail(ErrorKind::InvalidInput, "n must be even");
  if (!satisfies_skew_constraint(a_)) fail(ErrorKind::InvalidInput, "a violates a[0]=1, a[k]=a[n-k]");
  const IntMatrix p = negacirculant_int(a_), q = negacirculant_int(b_);
  const int n = static_cast<int>(a_.size());
  if (IntMatrix(p * p.transpose() + q * q.transpose()) != IntMatrix::Identity(n, n) * (2 * n))
    fail(ErrorKind::InvalidInput, "PP^T + QQ^T != 2nI");
}

GramMatrix gram_lemma_shm(const IntMatrix& h) {
  const int m = require_skew(h);
  GaussIntMatrix s(m, m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) s(r, c) = GaussInt(0, r == c ? 0 : h(r, c));
  return gram_from_view(std::move(s));
}

GramMatrix gram_M(const IntMatrix& h) {
  const int m = require_skew(h);
  if (m % 2) fail(ErrorKind::InvalidInput, "order must be even");
  const int n = m / 2;
  GaussIntMatrix s(m, m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      const bool diag_block = (r < n) == (c < n);
      if (diag_block)
        s(r, c) = GaussInt(0, r == c ? 0 : h(r, c));
      else if (r < n)
        s(r, c) = GaussInt(h(r, c), 0);
      else
        s(r, c) = GaussInt(h(c, r), 0);  // Q^T
    }
  return gram_from_view(std::move(s));
}

bool is_exact_etf_view(const GaussIntMatrix& s) {
  const std::size_t m = s.rows();
  if (s.cols() != m || m < 2) return false;
  if (!(s.adjoint() == s)) return false;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c) {
      const auto nrm = s(r, c).norm();
      if (r == c ? nrm != 0 : nrm != 1) return false;
    }
  GaussIntMatrix target = GaussIntMatrix::identity(m);
  for (std::size_t i = 0; i < m; ++i) target(i, i) = GaussInt(static_cast<std::int64_t>(m) - 1);
  return s * s == target;
}

IntMatrix double_hadamard(const IntMatrix& h) {
  const int m = static_cast<int>(h.rows());
  if (!is_skew_hadamard(h)) fail(ErrorKind::InvalidInput, "not a skew Hadamard matrix");
  const IntMatrix eye = IntMatrix::Identity(m, m);
  IntMatrix out(2 * m, 2 * m);
  out << h, h, h - 2 * eye, 2 * eye - h;
  return out;
}

ExtractedPQ extract_PQ(const GramMatrix& g) {
  if (g.size() % 2) fail(ErrorKind::NotDihedralEtf, "Gram size must be even");
  const int n = g.size() / 2;
  const double s = std::sqrt(2.0 * n - 1.0);
  const ComplexMatrix a = g.matrix().topLeftCorner(n, n), b = g.matrix().topRightCorner(n, n);
  const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
  const ComplexMatrix pc = eye - Complex(0, s) * (a - eye);
  const ComplexMatrix qc = s * b;
  ExtractedPQ out;
  out.p_approx = pc.real();
  out.q_approx = qc.real();
  out.p.resize(n, n);
  out.q.resize(n, n);
  double res = std::max(pc.imag().cwiseAbs().maxCoeff(), qc.imag().cwiseAbs().maxCoeff());
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const double pv = out.p_approx(r, c), qv = out.q_approx(r, c);
      out.p(r, c) = pv >= 0 ? 1 : -1;
      out.q(r, c) = qv >= 0 ? 1 : -1;
      res = std::max({res, std::abs(pv - out.p(r, c)), std::abs(qv - out.q(r, c))});
    }
  out.residual = res;
  if (res > 0.01) fail(ErrorKind::NotDihedralEtf, "rounding residual " + std::to_string(res) + " exceeds 0.01");
  return out;
}

const char* to_string(ExactifyCheck c) {
  switch (c) {
    case ExactifyCheck::Shape: return "shape";
    case ExactifyCheck::Rounding: return "rounding";
    case ExactifyCheck::Skewness: return "skewness";
    case ExactifyCheck::BlockStructure: return "block-structure";
    case ExactifyCheck::Orthogonality: return "orthogonality";
  }
  return "unknown";
}

ExactifyResult exactify(const Eigen::MatrixXd& h_approx) {
  ExactifyResult out;
  auto failure = [&](ExactifyCheck c, std::string why) {
    out.failed = c;
    out.detail = std::move(why);
    return out;
  };
  const Eigen::Index m = h_approx.rows();
  if (m != h_approx.cols() || m == 0 || m % 2) return failure(ExactifyCheck::Shape, "expected a square matrix of even order");
  IntMatrix h(m, m);
  for (Eigen::Index r = 0; r < m; ++r)
    for (Eigen::Index c = 0; c < m; ++c) {
      const double x = h_approx(r, c);
      if (!std::isfinite(x)) return failure(ExactifyCheck::Rounding, "non-finite entry");
      if (std::abs(x) < 0.05) fail(ErrorKind::AmbiguousEntry, "entry within 0.05 of zero");
      if (std::min(std::abs(x - 1), std::abs(x + 1)) > 0.5)
        return failure(ExactifyCheck::Rounding, "entry farther than 0.5 from +-1");
      h(r, c) = x > 0 ? 1 : -1;
    }
  if (IntMatrix(h + h.transpose()) != IntMatrix::Identity(m, m) * 2)
    return failure(ExactifyCheck::Skewness, "H + H^T != 2I");
  const int n = static_cast<int>(m / 2);
  const IntMatrix p = h.topLeftCorner(n, n), q = h.topRightCorner(n, n);
  std::vector<int> av(n), bv(n);
  for (int k = 0; k < n; ++k) {
    av[k] = p(0, k);
    bv[k] = q(0, k);
  }
  const SignVector a(av), b(bv);
  if (negacirculant_int(a) != p || negacirculant_int(b) != q || IntMatrix(h.bottomRightCorner(n, n)) != p.transpose())
    return failure(ExactifyCheck::BlockStructure, "blocks are not negacirculant of the form [P,Q;-Q^T,P^T]");
  if (IntMatrix(p * p.transpose() + q * q.transpose()) != IntMatrix::Identity(n, n) * (2 * n))
    return failure(ExactifyCheck::Orthogonality, "PP^T + QQ^T != 2nI");
  if (n % 2) return failure(ExactifyCheck::Shape, "n must be even");
  out.value.emplace(a, b);
  return out;
}

SignVector hex_decode(std::string_view s, int n) {
  if (n < 1 || n > 64) fail(ErrorKind::InvalidInput, "hex length must be in 1..64");
  if (s.empty()) fail(ErrorKind::InvalidInput, "empty hex string");
  unsigned __int128 value = 0;
  for (char ch : s) {
    int d;
    if (ch >= '0' && ch <= '9')
      d = ch - '0';
    else if (ch >= 'a' && ch <= 'f')
      d = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F')
      d = ch - 'A' + 10;
    else
      fail(ErrorKind::InvalidInput, std::string("invalid hex digit '") + ch + "'");
    value = (value << 4) | static_cast<unsigned>(d);
    if (value >> n) fail(ErrorKind::InvalidInput, "hex value does not fit in n bits");
  }
  std::vector<int> v(n);
  for (int j = 0; j < n; ++j) v[j] = (value >> (n - 1 - j)) & 1 ? 1 : -1;
  return SignVector(std::move(v));
}

std::string hex_encode(const SignVector& v) {
  const int n = static_cast<int>(v.size());
  if (n > 64) fail(ErrorKind::InvalidInput, "hex length must be at most 64");
  std::uint64_t value = 0;
  for (int j = 0; j < n; ++j)
    if (v[j] == 1) value |= std::uint64_t{1} << (n - 1 - j);
  const int digits = (n + 3) / 4;
  std::string out(digits, '0');
  for (int i = digits - 1; i >= 0; --i) {
    out[i] = "0123456789ABCDEF"[value & 15];
    value >>= 4;
  }
  return out;
}

}  // namespace detf
