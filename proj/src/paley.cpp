#include "detf/paley.hpp"

#include <algorithm>

namespace detf {

std::optional<PrimePower> prime_power(int q) {
  if (q < 2) return std::nullopt;
  int p = 2;
  while (p * p <= q && q % p) ++p;
  if (q % p) p = q;
  int k = 0, r = q;
  while (r % p == 0) {
    r /= p;
    ++k;
  }
  if (r != 1) return std::nullopt;
  return PrimePower{p, k};
}

namespace {

using Poly = std::vector<int>;  // lowest degree first, over GF(p)

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, int p) {
  trim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  // m is monic.
  while (static_cast<int>(a.size()) - 1 >= dm) {
    const int c = a.back();
    const int shift = static_cast<int>(a.size()) - 1 - dm;
    for (int t = 0; t <= dm; ++t) a[shift + t] = ((a[shift + t] - c * m[t]) % p + p) % p;
    trim(a);
  }
  return a;
}

// Monic polynomials of degree d, enumerated through all coefficient choices.
Poly monic_from_code(int code, int d, int p) {
  Poly m(d + 1, 0);
  for (int i = 0; i < d; ++i) {
    m[i] = code % p;
    code /= p;
  }
  m[d] = 1;
  return m;
}

bool irreducible(const Poly& m, int p) {
  const int d = static_cast<int>(m.size()) - 1;
  for (int e = 1; e <= d / 2; ++e) {
    int count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (int code = 0; code < count; ++code)
      if (poly_mod(m, monic_from_code(code, e, p), p).empty()) return false;
  }
  return true;
}

// Lexicographically smallest monic irreducible with coefficients compared low-degree-first.
Poly smallest_irreducible(int d, int p) {
  int count = 1;
  for (int i = 0; i < d; ++i) count *= p;
  std::vector<Poly> candidates;
  for (int code = 0; code < count; ++code) candidates.push_back(monic_from_code(code, d, p));
  std::sort(candidates.begin(), candidates.end());
  for (const auto& m : candidates)
    if (irreducible(m, p)) return m;
  fail(ErrorKind::ConstructionError, "no irreducible polynomial found");
}

}  // namespace

FiniteField::FiniteField(int q) : q_(q) {
  const auto pp = prime_power(q);
  if (!pp) fail(ErrorKind::InvalidInput, "field order must be a prime power");
  p_ = pp->p;
  k_ = pp->k;
  if (q > 4096) fail(ErrorKind::Unsupported, "field order too large for table arithmetic");
  modulus_ = k_ == 1 ? Poly{0, 1} : smallest_irreducible(k_, p_);
  if (!irreducible(modulus_, p_)) fail(ErrorKind::ConstructionError, "modulus is reducible");

  auto to_poly = [&](int x) {
    Poly a(k_);
    for (int i = 0; i < k_; ++i) {
      a[i] = x % p_;
      x /= p_;
    }
    return a;
  };
  auto to_code = [&](const Poly& a) {
    int x = 0;
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) x = x * p_ + a[i];
    return x;
  };
  add_.resize(q * q);
  mul_.resize(q * q);
  neg_.resize(q);
  for (int x = 0; x < q; ++x) {
    const Poly a = to_poly(x);
    Poly na(k_);
    for (int i = 0; i < k_; ++i) na[i] = (p_ - a[i]) % p_;
    neg_[x] = to_code(na);
    for (int y = 0; y < q; ++y) {
      const Poly b = to_poly(y);
      Poly s(k_);
      for (int i = 0; i < k_; ++i) s[i] = (a[i] + b[i]) % p_;
      add_[x * q + y] = to_code(s);
      Poly prod(2 * k_ - 1, 0);
      for (int i = 0; i < k_; ++i)
        for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
      mul_[x * q + y] = to_code(poly_mod(prod, modulus_, p_));
    }
  }
  chi_.resize(q);
  for (int x = 0; x < q; ++x) {
    if (x == 0) {
      chi_[x] = 0;
      continue;
    }
    const int e = p_ == 2 ? 1 : pow(x, (q - 1) / 2);
    chi_[x] = e == 1 ? 1 : -1;
  }
}

int FiniteField::pow(int x, long long e) const {
  int r = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

int quadratic_character(const FiniteField& f, int x) {
  if (x < 0 || x >= f.q()) fail(ErrorKind::InvalidInput, "element out of range");
  return f.character(x);
}

std::vector<ProjectivePoint> projective_line(const FiniteField& f) {
  std::vector<ProjectivePoint> pts;
  for (int a = 0; a < f.q(); ++a) pts.push_back({a, 1});
  pts.push_back({1, 0});
  return pts;
}

IntMatrix paley_hadamard(const FiniteField& f) {
  if (f.q() % 4 != 3) fail(ErrorKind::InvalidInput, "Paley skew construction needs q = 3 mod 4");
  const auto pts = projective_line(f);
  const int m = static_cast<int>(pts.size());
  IntMatrix h(m, m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c)
      h(r, c) = r == c ? 1 : f.character(f.sub(f.mul(pts[r].x, pts[c].y), f.mul(pts[r].y, pts[c].x)));
  if (!is_skew_hadamard(h)) fail(ErrorKind::ConstructionError, "Paley matrix failed verification");
  return h;
}

IntMatrix double_paley_hadamard(const FiniteField& f) {
  const IntMatrix h = paley_hadamard(f);
  const int m = static_cast<int>(h.rows());
  IntMatrix d(2 * m, 2 * m);
  d << h, h, -h.transpose(), h.transpose();
  if (!is_skew_hadamard(d)) fail(ErrorKind::ConstructionError, "double Paley matrix failed verification");
  return d;
}

GramMatrix paley_gram(const FiniteField& f) { return gram_M(paley_hadamard(f)); }
GramMatrix double_paley_gram(const FiniteField& f) { return gram_M(double_paley_hadamard(f)); }
GramMatrix conj_double_paley_gram(const FiniteField& f) { return double_paley_gram(f).conjugate(); }

}  // namespace detf
