#include "detf/equiv.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <sstream>

namespace detf {

namespace {

int unit_code(const GaussInt& z) {
  if (z.re == 1 && z.im == 0) return 0;
  if (z.re == 0 && z.im == 1) return 1;
  if (z.re == -1 && z.im == 0) return 2;
  if (z.re == 0 && z.im == -1) return 3;
  return -1;
}

GaussInt unit_from_code(int c) {
  static const GaussInt units[4] = {GaussInt(1, 0), GaussInt(0, 1), GaussInt(-1, 0), GaussInt(0, -1)};
  return units[((c % 4) + 4) % 4];
}

using Colors = std::vector<std::uint8_t>;  // row-major, 4 on the diagonal

Colors colors_of(const NormalizedGram& ng) {
  const int n = ng.size;
  Colors c(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) c[r * n + s] = r == s ? 4 : static_cast<std::uint8_t>(unit_code(ng.exact(r, s)));
  return c;
}

// Colour-preserving bijection p of positions with p(0) = 0, p(1) = b.
class Matcher {
 public:
  Matcher(const Colors& c0, const Colors& c1, int n) : c0_(c0), n_(n), nb1_(static_cast<std::size_t>(n) * 4, 0) {
    for (int w = 0; w < n; ++w)
      for (int u = 0; u < n; ++u)
        if (u != w) nb1_[w * 4 + c1[u * n + w]] |= std::uint64_t{1} << u;
  }

  std::optional<std::vector<int>> run(int b) {
    std::vector<int> map(n_, -1);
    std::vector<std::uint64_t> cand(n_, 0);
    const std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    map[0] = 0;
    map[1] = b;
    std::uint64_t used = (std::uint64_t{1} << 0) | (std::uint64_t{1} << b);
    for (int x = 2; x < n_; ++x) {
      cand[x] = all & ~used & nb1_[0 * 4 + c0_[x * n_ + 0]] & nb1_[b * 4 + c0_[x * n_ + 1]];
      if (!cand[x]) return std::nullopt;
    }
    if (search(map, cand, used, n_ - 2)) return map;
    return std::nullopt;
  }

 private:
  bool search(std::vector<int>& map, const std::vector<std::uint64_t>& cand, std::uint64_t used, int left) {
    if (left == 0) return true;
    int best = -1, best_count = 65;
    for (int x = 0; x < n_; ++x) {
      if (map[x] >= 0) continue;
      const int cnt = std::popcount(cand[x] & ~used);
      if (cnt < best_count) {
        best = x;
        best_count = cnt;
      }
    }
    if (best_count == 0) return false;
    std::uint64_t options = cand[best] & ~used;
    std::vector<std::uint64_t> next(n_);
    while (options) {
      const int w = std::countr_zero(options);
      options &= options - 1;
      bool dead = false;
      for (int y = 0; y < n_ && !dead; ++y) {
        if (map[y] >= 0 || y == best) continue;
        next[y] = cand[y] & nb1_[w * 4 + c0_[y * n_ + best]] & ~(std::uint64_t{1} << w);
        dead = !(next[y] & ~used);
      }
      if (dead) continue;
      map[best] = w;
      if (search(map, next, used | (std::uint64_t{1} << w), left - 1)) return true;
      map[best] = -1;
    }
    return false;
  }

  const Colors& c0_;
  int n_;
  std::vector<std::uint64_t> nb1_;
};

EquivalenceCertificate certificate_from(const NormalizedGram& n0, const NormalizedGram& n1,
                                        const std::vector<int>& pos_map) {
  const int n = n0.size;
  EquivalenceCertificate cert;
  cert.sigma.assign(n, -1);
  cert.quarter_turns.assign(n, 0);
  for (int x = 0; x < n; ++x) {
    const int j = n0.order[x];
    const int r = n1.order[pos_map[x]];
    cert.sigma[j] = r;
    // d_r = conj(c1) c0
    const GaussInt d = n1.phases[pos_map[x]].conj() * n0.phases[x];
    cert.quarter_turns[r] = unit_code(d);
  }
  return cert;
}

std::optional<EquivalenceCertificate> diagonal_similarity(const GaussIntMatrix& s0, const GaussIntMatrix& s1) {
  const std::size_t n = s0.rows();
  std::vector<GaussInt> d(n);
  d[0] = GaussInt(1, 0);
  for (std::size_t j = 1; j < n; ++j) d[j] = s1(0, j).conj() * s0(0, j);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (!(s1(j, k) == d[j] * s0(j, k) * d[k].conj())) return std::nullopt;
  EquivalenceCertificate cert = EquivalenceCertificate::identity(static_cast<int>(n));
  for (std::size_t j = 0; j < n; ++j) cert.quarter_turns[j] = unit_code(d[j]);
  return cert;
}

}  // namespace

ComplexMatrix NormalizedGram::to_complex() const {
  ComplexMatrix g = ComplexMatrix::Identity(size, size);
  const double scale = 1.0 / std::sqrt(double(size) - 1.0);
  for (int r = 0; r < size; ++r)
    for (int c = 0; c < size; ++c) g(r, c) += Complex(double(exact(r, c).re), double(exact(r, c).im)) * scale;
  return g;
}

GaussIntMatrix exact_view(const GramMatrix& g) {
  if (g.exact()) return *g.exact();
  const int n = g.size();
  if (n < 2) fail(ErrorKind::NotEtfGram, "Gram too small");
  const double s = std::sqrt(double(n) - 1.0);
  GaussIntMatrix out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      if (r == c) continue;
      const Complex z = g(r, c) * s;
      const GaussInt e(std::llround(z.real()), std::llround(z.imag()));
      if (std::abs(z - Complex(double(e.re), double(e.im))) > 1e-6 || e.norm() != 1)
        fail(ErrorKind::NotEtfGram, "entry is not a fourth root of unity over sqrt(N-1)");
      out(r, c) = e;
    }
  return out;
}

NormalizedGram normalize(const GaussIntMatrix& exact, int anchor) {
  const int n = static_cast<int>(exact.rows());
  if (anchor < 0 || anchor >= n) fail(ErrorKind::InvalidInput, "anchor out of range");
  if (n > 64) fail(ErrorKind::Unsupported, "Gram larger than 64");
  NormalizedGram ng;
  ng.size = n;
  ng.order.push_back(anchor);
  for (int i = 0; i < n; ++i)
    if (i != anchor) ng.order.push_back(i);
  ng.phases.resize(n);
  ng.phases[0] = GaussInt(1, 0);
  for (int i = 1; i < n; ++i) {
    const GaussInt z = exact(anchor, ng.order[i]);
    if (unit_code(z) < 0) fail(ErrorKind::NotEtfGram, "off-diagonal entry is not a unit");
    ng.phases[i] = z;
  }
  ng.exact = GaussIntMatrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const GaussInt z = ng.phases[i] * exact(ng.order[i], ng.order[j]) * ng.phases[j].conj();
      if (unit_code(z) < 0) fail(ErrorKind::NotEtfGram, "off-diagonal entry is not a unit");
      ng.exact(i, j) = z;
    }
  return ng;
}

NormalizedGram normalize(const GramMatrix& g, int anchor) { return normalize(exact_view(g), anchor); }

NormalizedGram with_second(const NormalizedGram& ng, int second) {
  if (second < 1 || second >= ng.size) fail(ErrorKind::InvalidInput, "second pivot out of range");
  std::vector<int> pos{0, second};
  for (int i = 1; i < ng.size; ++i)
    if (i != second) pos.push_back(i);
  NormalizedGram out;
  out.size = ng.size;
  out.exact = GaussIntMatrix(ng.size, ng.size);
  for (int i = 0; i < ng.size; ++i) {
    out.order.push_back(ng.order[pos[i]]);
    out.phases.push_back(ng.phases[pos[i]]);
    for (int j = 0; j < ng.size; ++j) out.exact(i, j) = ng.exact(pos[i], pos[j]);
  }
  return out;
}

namespace {

// Signature of the classes of row `second` of a normalized exact view (ignoring 0 and second).
Signature signature_at(const GaussIntMatrix& s, int size, int second) {
  std::array<std::vector<int>, 4> cls;
  for (int j = 1; j < size; ++j)
    if (j != second) cls[unit_code(s(second, j))].push_back(j);
  std::ostringstream key;
  for (const auto& c : cls) key << c.size() << ',';
  for (const auto& c : cls) {
    key << '|';
    GaussIntMatrix sub(c.size(), c.size());
    for (std::size_t a = 0; a < c.size(); ++a)
      for (std::size_t b = 0; b < c.size(); ++b) sub(a, b) = s(c[a], c[b]);
    for (const auto& coef : characteristic_polynomial(sub)) key << to_string(coef) << ' ';
  }
  return {key.str()};
}

std::array<int, 4> class_counts(const GaussIntMatrix& s, int size, int second) {
  std::array<int, 4> cnt{};
  for (int j = 1; j < size; ++j)
    if (j != second) ++cnt[unit_code(s(second, j))];
  return cnt;
}

}  // namespace

Signature invariant_signature(const NormalizedGram& ng) {
  if (ng.size < 2) fail(ErrorKind::InvalidInput, "normalized Gram too small");
  return signature_at(ng.exact, ng.size, 1);
}

std::vector<Complex> EquivalenceCertificate::phases() const {
  std::vector<Complex> out;
  for (int q : quarter_turns) {
    const GaussInt u = unit_from_code(q);
    out.emplace_back(double(u.re), double(u.im));
  }
  return out;
}

EquivalenceCertificate EquivalenceCertificate::identity(int n) {
  EquivalenceCertificate c;
  for (int i = 0; i < n; ++i) c.sigma.push_back(i);
  c.quarter_turns.assign(n, 0);
  return c;
}

EquivalenceCertificate EquivalenceCertificate::inverse() const {
  const int n = static_cast<int>(sigma.size());
  EquivalenceCertificate inv;
  inv.sigma.assign(n, 0);
  inv.quarter_turns.assign(n, 0);
  for (int j = 0; j < n; ++j) {
    inv.sigma[sigma[j]] = j;
    inv.quarter_turns[j] = (4 - quarter_turns[sigma[j]]) % 4;
  }
  return inv;
}

EquivalenceCertificate EquivalenceCertificate::then(const EquivalenceCertificate& next) const {
  const int n = static_cast<int>(sigma.size());
  EquivalenceCertificate out;
  out.sigma.assign(n, 0);
  out.quarter_turns.assign(n, 0);
  for (int j = 0; j < n; ++j) {
    const int r = next.sigma[sigma[j]];
    out.sigma[j] = r;
    out.quarter_turns[r] = (next.quarter_turns[r] + quarter_turns[sigma[j]]) % 4;
  }
  return out;
}

GramMatrix apply_certificate(const GramMatrix& g0, const EquivalenceCertificate& cert) {
  const int n = g0.size();
  if (static_cast<int>(cert.sigma.size()) != n) fail(ErrorKind::InvalidInput, "certificate size mismatch");
  const auto d = cert.phases();
  ComplexMatrix g1(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const int r = cert.sigma[j], s = cert.sigma[k];
      g1(r, s) = d[r] * g0(j, k) * std::conj(d[s]);
    }
  if (!g0.exact()) return GramMatrix(std::move(g1));
  GaussIntMatrix e(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const int r = cert.sigma[j], s = cert.sigma[k];
      e(r, s) = unit_from_code(cert.quarter_turns[r]) * (*g0.exact())(j, k) *
                unit_from_code(cert.quarter_turns[s]).conj();
    }
  return GramMatrix(std::move(g1), std::move(e));
}

bool verify_certificate(const GramMatrix& g0, const GramMatrix& g1, const EquivalenceCertificate& cert) {
  const int n = g0.size();
  if (g1.size() != n || static_cast<int>(cert.sigma.size()) != n || static_cast<int>(cert.quarter_turns.size()) != n)
    return false;
  std::vector<int> seen(n, 0);
  for (int s : cert.sigma) {
    if (s < 0 || s >= n || seen[s]++) return false;
  }
  if (g0.exact() && g1.exact()) {
    const auto& s0 = *g0.exact();
    const auto& s1 = *g1.exact();
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const int r = cert.sigma[j], s = cert.sigma[k];
        if (!(s1(r, s) == unit_from_code(cert.quarter_turns[r]) * s0(j, k) * unit_from_code(cert.quarter_turns[s]).conj()))
          return false;
      }
    return true;
  }
  return max_abs_diff(apply_certificate(g0, cert).matrix(), g1.matrix()) <= 1e-9;
}

EquivalenceResult are_equivalent(const GramMatrix& g0, const GramMatrix& g1) {
  if (g0.size() != g1.size()) fail(ErrorKind::InvalidInput, "Gram sizes differ");
  const int n = g0.size();
  const GaussIntMatrix s0 = exact_view(g0), s1 = exact_view(g1);
  const GramMatrix e0(g0.matrix(), s0, 1e-6), e1(g1.matrix(), s1, 1e-6);
  EquivalenceResult res;
  auto accept = [&](EquivalenceCertificate cert) {
    if (!verify_certificate(e0, e1, cert)) fail(ErrorKind::ConstructionError, "certificate failed verification");
    res.equivalent = true;
    res.certificate = std::move(cert);
    return res;
  };
  if (n < 3) {
    // Two vectors: any pair of unit off-diagonal entries is a diagonal similarity.
    if (auto c = diagonal_similarity(s0, s1)) return accept(*c);
    return res;
  }
  if (auto c = diagonal_similarity(s0, s1)) return accept(*c);

  const NormalizedGram n0 = normalize(s0, 0);
  const Colors c0 = colors_of(n0);
  const auto counts0 = class_counts(n0.exact, n, 1);
  const Signature sig0 = invariant_signature(n0);
  for (int anchor = 0; anchor < n; ++anchor) {
    const NormalizedGram n1 = normalize(s1, anchor);
    const Colors c1 = colors_of(n1);
    Matcher matcher(c0, c1, n);
    for (int b = 1; b < n; ++b) {
      if (class_counts(n1.exact, n, b) != counts0) continue;
      if (!(signature_at(n1.exact, n, b) == sig0)) continue;
      if (auto map = matcher.run(b)) return accept(certificate_from(n0, n1, *map));
    }
  }
  return res;
}

std::string anchor_invariant(const GramMatrix& g) {
  const NormalizedGram ng = normalize(g, 0);
  std::vector<std::string> sigs;
  for (int b = 1; b < ng.size; ++b) sigs.push_back(signature_at(ng.exact, ng.size, b).key);
  std::sort(sigs.begin(), sigs.end());
  std::string out;
  for (const auto& s : sigs) out += s + ";";
  return out;
}

}  // namespace detf
