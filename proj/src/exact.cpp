#include "detf/exact.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace detf {

namespace {

struct Overflow {};

// 128-bit integer that throws Overflow instead of wrapping.
struct Checked {
  __int128 v = 0;

  Checked() = default;
  Checked(long long x) : v(x) {}

  friend Checked operator+(Checked a, Checked b) {
    Checked r;
    if (__builtin_add_overflow(a.v, b.v, &r.v)) throw Overflow{};
    return r;
  }
  friend Checked operator-(Checked a, Checked b) {
    Checked r;
    if (__builtin_sub_overflow(a.v, b.v, &r.v)) throw Overflow{};
    return r;
  }
  friend Checked operator*(Checked a, Checked b) {
    Checked r;
    if (__builtin_mul_overflow(a.v, b.v, &r.v)) throw Overflow{};
    return r;
  }
  friend Checked operator-(Checked a) { return Checked(0) - a; }
  Checked& operator+=(Checked b) { return *this = *this + b; }
  Checked& operator-=(Checked b) { return *this = *this - b; }
  friend bool operator==(Checked a, Checked b) { return a.v == b.v; }
};

BigInt to_big(__int128 x) {
  bool neg = x < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(x) : static_cast<unsigned __int128>(x);
  BigInt r = static_cast<std::uint64_t>(u >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(u);
  return neg ? BigInt(-r) : r;
}

BigInt to_big(const Checked& x) { return to_big(x.v); }

template <class T>
std::vector<Gaussian<T>> berkowitz(const GaussIntMatrix& a) {
  using G = Gaussian<T>;
  const std::size_t s = a.rows();
  auto at = [&](std::size_t i, std::size_t j) { return G(T(a(i, j).re), T(a(i, j).im)); };
  std::vector<G> p{G(T(1))};  // descending powers
  for (std::size_t r = 0; r < s; ++r) {
    std::vector<G> q(r + 2);
    q[0] = G(T(1));
    q[1] = -at(r, r);
    std::vector<G> v(r), w(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = at(i, r);
    for (std::size_t k = 2; k < r + 2; ++k) {
      G dot;
      for (std::size_t j = 0; j < r; ++j) dot += at(r, j) * v[j];
      q[k] = -dot;
      if (k + 1 < r + 2) {
        for (std::size_t i = 0; i < r; ++i) {
          G acc;
          for (std::size_t j = 0; j < r; ++j) acc += at(i, j) * v[j];
          w[i] = acc;
        }
        std::swap(v, w);
      }
    }
    std::vector<G> next(r + 2);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) next[i] += q[i - j] * p[j];
    p = std::move(next);
  }
  std::vector<Gaussian<T>> asc(p.rbegin(), p.rend());
  return asc;
}

std::int64_t narrow(__int128 x) {
  if (x > INT64_MAX || x < INT64_MIN) fail(ErrorKind::ConstructionError, "cyclotomic coefficient overflow");
  return static_cast<std::int64_t>(x);
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::ConstructionError, "denominator overflow");
  return r;
}

}  // namespace

Complex to_complex(const GaussianRational& z) {
  return {z.re.convert_to<double>(), z.im.convert_to<double>()};
}

std::string to_string(const GaussianBig& z) {
  std::string s = z.re.str();
  if (z.im >= 0) s += "+";
  return s + z.im.str() + "i";
}

ComplexMatrix to_complex(const ExactComplexMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = to_complex(m(r, c));
  return out;
}

std::vector<GaussianBig> characteristic_polynomial(const GaussIntMatrix& a) {
  if (a.rows() != a.cols()) fail(ErrorKind::InvalidInput, "characteristic polynomial of non-square matrix");
  std::vector<GaussianBig> out;
  try {
    for (const auto& c : berkowitz<Checked>(a)) out.emplace_back(to_big(c.re), to_big(c.im));
  } catch (const Overflow&) {
    out.clear();
    for (const auto& c : berkowitz<BigInt>(a)) out.push_back(c);
  }
  return out;
}

namespace {

std::vector<std::int64_t> compute_cyclotomic(int order) {
  // x^L - 1 divided by every Phi_d with d | L, d < L.
  std::vector<__int128> num(order + 1, 0);
  num[0] = -1;
  num[order] = 1;
  for (int d = 1; d < order; ++d) {
    if (order % d) continue;
    const auto div = compute_cyclotomic(d);
    const std::size_t dd = div.size() - 1;
    const std::size_t dn = num.size() - 1;
    std::vector<__int128> quot(dn - dd + 1, 0);
    for (std::size_t k = dn + 1; k-- > dd;) {
      __int128 c = num[k];
      quot[k - dd] = c;
      for (std::size_t t = 0; t <= dd; ++t) num[k - dd + t] -= c * div[t];
    }
    num = std::move(quot);
  }
  std::vector<std::int64_t> phi;
  for (auto c : num) phi.push_back(narrow(c));
  return phi;
}

}  // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(int order) {
  static std::mutex mu;
  static std::map<int, std::vector<std::int64_t>> cache;
  if (order < 1) fail(ErrorKind::InvalidInput, "cyclotomic order must be positive");
  std::lock_guard lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_cyclotomic(order)).first;
  return it->second;
}

CycloMatrix::CycloMatrix(std::size_t rows, std::size_t cols, int order, std::int64_t denominator)
    : rows_(rows), cols_(cols), order_(order), denom_(denominator), coef_(rows * cols * order, 0) {
  if (order < 1) fail(ErrorKind::InvalidInput, "cyclotomic order must be positive");
  if (denominator < 1) fail(ErrorKind::InvalidInput, "denominator must be positive");
}

CycloMatrix CycloMatrix::identity(std::size_t n, int order) {
  CycloMatrix m(n, n, order);
  for (std::size_t i = 0; i < n; ++i) m.add(i, i, 0, 1);
  return m;
}

void CycloMatrix::add(std::size_t r, std::size_t c, long long exponent, std::int64_t coef) {
  long long e = exponent % order_;
  if (e < 0) e += order_;
  auto& slot = coef_[(r * cols_ + c) * order_ + e];
  if (__builtin_add_overflow(slot, coef, &slot)) fail(ErrorKind::ConstructionError, "coefficient overflow");
}

void CycloMatrix::add_gaussian(std::size_t r, std::size_t c, std::int64_t re, std::int64_t im) {
  add(r, c, 0, re);
  if (im != 0) {
    if (order_ % 4) fail(ErrorKind::InvalidInput, "order must be a multiple of 4 to hold i");
    add(r, c, 3LL * order_ / 4, im);  // i = omega_L^{3L/4}
  }
}

std::int64_t CycloMatrix::coefficient(std::size_t r, std::size_t c, int exponent) const {
  return coef_[(r * cols_ + c) * order_ + exponent];
}

CycloMatrix CycloMatrix::adjoint() const {
  CycloMatrix out(cols_, rows_, order_, denom_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      for (int e = 0; e < order_; ++e) {
        std::int64_t v = coef_[(r * cols_ + c) * order_ + e];
        if (v) out.coef_[(c * rows_ + r) * order_ + (order_ - e) % order_] = v;
      }
  return out;
}

CycloMatrix CycloMatrix::operator*(const CycloMatrix& o) const {
  if (cols_ != o.rows_ || order_ != o.order_) fail(ErrorKind::InvalidInput, "cyclotomic product mismatch");
  const int L = order_;
  // Sparse view of the right factor.
  std::vector<std::vector<std::pair<int, std::int64_t>>> sparse(o.rows_ * o.cols_);
  for (std::size_t idx = 0; idx < sparse.size(); ++idx)
    for (int e = 0; e < L; ++e)
      if (auto v = o.coef_[idx * L + e]) sparse[idx].emplace_back(e, v);
  std::vector<__int128> wide(rows_ * o.cols_ * L, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < o.cols_; ++j) {
      __int128* acc = &wide[(i * o.cols_ + j) * L];
      for (std::size_t k = 0; k < cols_; ++k) {
        const auto& right = sparse[k * o.cols_ + j];
        if (right.empty()) continue;
        const std::int64_t* left = &coef_[(i * cols_ + k) * L];
        for (int e = 0; e < L; ++e) {
          if (!left[e]) continue;
          for (auto [f, v] : right) acc[(e + f) % L] += static_cast<__int128>(left[e]) * v;
        }
      }
    }
  // Cancel the common factor before narrowing so products of fine denominators fit.
  __int128 d = static_cast<__int128>(denom_) * o.denom_;
  __int128 g = d;
  for (auto c : wide) {
    if (g == 1) break;
    __int128 a = c < 0 ? -c : c;
    while (a) {
      __int128 t = g % a;
      g = a;
      a = t;
    }
  }
  CycloMatrix out(rows_, o.cols_, L, narrow(d / g));
  for (std::size_t idx = 0; idx < wide.size(); ++idx) out.coef_[idx] = narrow(wide[idx] / g);
  return out;
}

CycloMatrix CycloMatrix::operator+(const CycloMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || order_ != o.order_)
    fail(ErrorKind::InvalidInput, "cyclotomic sum mismatch");
  std::int64_t d = std::lcm(denom_, o.denom_);
  CycloMatrix out(rows_, cols_, order_, d);
  std::int64_t sa = d / denom_, sb = d / o.denom_;
  for (std::size_t i = 0; i < coef_.size(); ++i)
    out.coef_[i] = narrow(static_cast<__int128>(coef_[i]) * sa + static_cast<__int128>(o.coef_[i]) * sb);
  return out;
}

CycloMatrix CycloMatrix::operator-(const CycloMatrix& o) const {
  CycloMatrix neg = o;
  for (auto& c : neg.coef_) c = -c;
  return *this + neg;
}

CycloMatrix CycloMatrix::scaled_denominator(std::int64_t d) const {
  CycloMatrix out = *this;
  out.denom_ = checked_mul(denom_, d);
  return out;
}

std::vector<__int128> CycloMatrix::reduced_entry(std::size_t idx) const {
  const auto& phi = cyclotomic_polynomial(order_);
  const int deg = static_cast<int>(phi.size()) - 1;
  std::vector<__int128> x(coef_.begin() + idx * order_, coef_.begin() + (idx + 1) * order_);
  for (int k = order_ - 1; k >= deg; --k) {
    __int128 c = x[k];
    if (!c) continue;
    for (int t = 0; t <= deg; ++t) x[k - deg + t] -= c * phi[t];
  }
  x.resize(deg);
  return x;
}

bool CycloMatrix::equals(const CycloMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || order_ != o.order_) return false;
  return (*this - o).is_zero();
}

bool CycloMatrix::is_zero() const {
  for (std::size_t idx = 0; idx < rows_ * cols_; ++idx)
    for (auto c : reduced_entry(idx))
      if (c != 0) return false;
  return true;
}

bool CycloMatrix::trace_equals(const BigRational& t) const {
  if (rows_ != cols_) fail(ErrorKind::InvalidInput, "trace of non-square matrix");
  CycloMatrix tr(1, 1, order_, denom_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (int e = 0; e < order_; ++e) tr.add(0, 0, e, coef_[(i * cols_ + i) * order_ + e]);
  auto red = tr.reduced_entry(0);
  for (std::size_t e = 1; e < red.size(); ++e)
    if (red[e] != 0) return false;
  return BigRational(to_big(red.empty() ? 0 : red[0]), BigInt(denom_)) == t;
}

ComplexMatrix CycloMatrix::to_complex() const {
  ComplexMatrix out(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      Complex z = 0;
      for (int e = 0; e < order_; ++e)
        if (auto v = coef_[(r * cols_ + c) * order_ + e]) z += double(v) * root_of_unity(order_, e);
      out(r, c) = z / double(denom_);
    }
  return out;
}

}  // namespace detf
