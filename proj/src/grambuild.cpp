#include "detf/grambuild.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>

namespace detf {

std::vector<int> SpectralPartition::roots() const {
  std::vector<int> out;
  if (flavor == DihedralFlavor::Strict) {
    for (int k = 0; k < n; ++k) out.push_back(k);
  } else {
    for (int k = 1; k < 2 * n; k += 2) out.push_back(k);
  }
  return out;
}

void validate(const SpectralPartition& p) {
  if (p.n < 1) fail(ErrorKind::InvalidPartition, "n must be positive");
  const auto all = p.roots();
  std::set<int> seen;
  for (const auto* part : {&p.h, &p.f, &p.c}) {
    std::set<int> mine(part->begin(), part->end());
    if (mine.size() != part->size()) fail(ErrorKind::InvalidPartition, "repeated root");
    for (int k : *part) {
      if (!std::binary_search(all.begin(), all.end(), k)) fail(ErrorKind::InvalidPartition, "index is not a root");
      if (!seen.insert(k).second) fail(ErrorKind::InvalidPartition, "parts are not disjoint");
      if (!mine.count(p.conj_index(k))) fail(ErrorKind::InvalidPartition, "part not closed under conjugation");
    }
  }
  if (seen.size() != all.size()) fail(ErrorKind::InvalidPartition, "parts do not cover the roots");
  if (p.f.size() != p.c.size()) fail(ErrorKind::InvalidPartition, "|F| != |C|");
}

UnitPairAssignment ExactUnitPairAssignment::to_float() const {
  UnitPairAssignment out;
  const double r = 1.0 / std::sqrt(2.0);
  for (const auto& [k, e] : pairs) {
    if (e.real_sign != 0)
      out.pairs[k] = {Complex(r, 0), Complex(r * e.real_sign, 0)};
    else
      out.pairs[k] = {to_complex(e.u), to_complex(e.v)};
  }
  return out;
}

namespace {

using M2 = std::array<std::array<Complex, 2>, 2>;

M2 component(const UnitPair& p) {
  return {{{p.u * std::conj(p.u), p.u * std::conj(p.v)}, {p.v * std::conj(p.u), p.v * std::conj(p.v)}}};
}

using M2Exact = std::array<std::array<GaussianRational, 2>, 2>;

M2Exact component(const ExactUnitPair& p) {
  if (p.real_sign != 0) {
    const BigRational h(1, 2);
    const GaussianRational a(h), b(h * p.real_sign);
    return {{{a, b}, {b, a}}};
  }
  return {{{p.u * p.u.conj(), p.u * p.v.conj()}, {p.v * p.u.conj(), p.v * p.v.conj()}}};
}

void check_keys(const SpectralPartition& p, const std::vector<int>& keys) {
  std::vector<int> h = p.h;
  std::sort(h.begin(), h.end());
  if (keys != h) fail(ErrorKind::InvalidPairs, "unit pairs must be given exactly for the roots in H");
}

}  // namespace

void validate(const SpectralPartition& p, const UnitPairAssignment& pairs, double tol) {
  validate(p);
  std::vector<int> keys;
  for (const auto& kv : pairs.pairs) keys.push_back(kv.first);
  check_keys(p, keys);
  const double r = 1.0 / std::sqrt(2.0);
  for (const auto& [k, pr] : pairs.pairs) {
    if (std::abs(std::norm(pr.u) + std::norm(pr.v) - 1.0) > tol) fail(ErrorKind::InvalidPairs, "pair is not a unit vector");
    if (p.is_real_root(k)) {
      if (std::abs(pr.u - r) > tol || (std::abs(pr.v - r) > tol && std::abs(pr.v + r) > tol))
        fail(ErrorKind::InvalidPairs, "real root needs u = 1/sqrt2, v = +-1/sqrt2");
      continue;
    }
    const M2 mine = component(pr), other = component(pairs.pairs.at(p.conj_index(k)));
    // The conjugate root carries the swapped projector.
    if (std::abs(other[0][0] - mine[1][1]) > tol || std::abs(other[0][1] - mine[1][0]) > tol)
      fail(ErrorKind::InvalidPairs, "conjugate pair coupling violated");
  }
}

void validate(const SpectralPartition& p, const ExactUnitPairAssignment& pairs) {
  validate(p);
  std::vector<int> keys;
  for (const auto& kv : pairs.pairs) keys.push_back(kv.first);
  check_keys(p, keys);
  for (const auto& [k, pr] : pairs.pairs) {
    if (p.is_real_root(k)) {
      if (pr.real_sign != 1 && pr.real_sign != -1) fail(ErrorKind::InvalidPairs, "real root needs a sign");
      continue;
    }
    if (pr.real_sign != 0) fail(ErrorKind::InvalidPairs, "sign given for a non-real root");
    if (pr.u.norm() + pr.v.norm() != BigRational(1)) fail(ErrorKind::InvalidPairs, "pair is not a unit vector");
    const M2Exact mine = component(pr), other = component(pairs.pairs.at(p.conj_index(k)));
    if (!(other[0][0] == mine[1][1]) || !(other[0][1] == mine[1][0]))
      fail(ErrorKind::InvalidPairs, "conjugate pair coupling violated");
  }
}

ComplexMatrix spectral_kernel(const SpectralPartition& p, int index) {
  return p.flavor == DihedralFlavor::Strict ? cyclotomic_idempotent(p.n, p.root(index))
                                            : nega_cyclotomic_idempotent(p.n, p.root(index));
}

ComplexMatrix build_tight_idempotent(const SpectralPartition& p, const UnitPairAssignment& pairs) {
  validate(p, pairs);
  const int n = p.n;
  ComplexMatrix x = ComplexMatrix::Zero(2 * n, 2 * n);
  for (int k : p.h) {
    const ComplexMatrix kz = spectral_kernel(p, k);
    const M2 m = component(pairs.pairs.at(k));
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) x.block(a * n, b * n, n, n) += m[a][b] * kz;
  }
  for (int k : p.f) {
    const ComplexMatrix kz = spectral_kernel(p, k);
    x.topLeftCorner(n, n) += kz;
    x.bottomRightCorner(n, n) += kz;
  }
  return x;
}

GramMatrix build_tight_gram(const SpectralPartition& p, const UnitPairAssignment& pairs) {
  ComplexMatrix g = 2.0 * build_tight_idempotent(p, pairs);
  g = (g + g.adjoint()) * 0.5;
  return GramMatrix(std::move(g), 1e-8);
}

CycloMatrix build_tight_idempotent_exact(const SpectralPartition& p, const ExactUnitPairAssignment& pairs) {
  validate(p, pairs);
  const int n = p.n;
  const int order = p.order();
  const int big_l = std::lcm(order, 4);
  const int step = big_l / order;

  std::map<int, M2Exact> comps;
  BigInt dm = 1;
  for (int k : p.h) {
    comps[k] = component(pairs.pairs.at(k));
    for (const auto& row : comps[k])
      for (const auto& z : row) {
        dm = boost::multiprecision::lcm(dm, BigInt(denominator(z.re)));
        dm = boost::multiprecision::lcm(dm, BigInt(denominator(z.im)));
      }
  }
  if (dm > BigInt(INT64_MAX / 64)) fail(ErrorKind::ConstructionError, "pair denominators too large");
  const auto d = static_cast<std::int64_t>(dm);

  // n K_zeta has monomial entries zeta^{j-i} (strict) or zeta^{i-j} (projective).
  auto exponent = [&](int k, int i, int j) -> long long {
    const long long e = static_cast<long long>(k) * step;
    return p.flavor == DihedralFlavor::Strict ? e * (j - i) : e * (i - j);
  };
  CycloMatrix x(2 * n, 2 * n, big_l, static_cast<std::int64_t>(n) * d);
  for (int k : p.h) {
    const auto& m = comps[k];
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const BigRational re = m[a][b].re * d, im = m[a][b].im * d;
        const auto ri = static_cast<std::int64_t>(numerator(re)), ii = static_cast<std::int64_t>(numerator(im));
        if (ri == 0 && ii == 0) continue;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            const long long e = exponent(k, i, j);
            x.add(a * n + i, b * n + j, e, ri);
            if (ii) x.add(a * n + i, b * n + j, e + 3LL * big_l / 4, ii);
          }
      }
  }
  for (int k : p.f)
    for (int a = 0; a < 2; ++a)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x.add(a * n + i, a * n + j, exponent(k, i, j), d);
  return x;
}

bool is_regular_gram(const SpectralPartition& p) {
  validate(p);
  return static_cast<int>(p.h.size()) == p.n;
}

ComplexMatrix real_part_of_A(const SpectralPartition& p) {
  validate(p);
  ComplexMatrix out = ComplexMatrix::Zero(p.n, p.n);
  for (int k : p.h) out += 0.5 * spectral_kernel(p, k);
  for (int k : p.f) out += spectral_kernel(p, k);
  return out;
}

UnitPair unit_pair_from_angles(double theta, double phi) {
  return {Complex(std::cos(theta), 0), std::polar(std::sin(theta), phi)};
}

UnitPair conjugate_partner(const UnitPair& pair) { return {pair.v, pair.u}; }

std::pair<SpectralPartition, UnitPairAssignment> decompose_tight_idempotent(const ComplexMatrix& x,
                                                                            DihedralFlavor flavor,
                                                                            double tol) {
  if (x.rows() != x.cols() || x.rows() % 2) fail(ErrorKind::InvalidInput, "expected a 2n x 2n matrix");
  SpectralPartition part;
  part.n = static_cast<int>(x.rows() / 2);
  part.flavor = flavor;
  const int n = part.n;
  UnitPairAssignment pairs;
  const double r = 1.0 / std::sqrt(2.0);
  for (int k : part.roots()) {
    const RootIndex z = part.root(k);
    Complex c[2][2];
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        ComplexMatrix blk = x.block(a * n, b * n, n, n);
        c[a][b] = flavor == DihedralFlavor::Strict ? circulant_eigenvalue(blk, z, tol)
                                                   : negacirculant_eigenvalue(blk, z, tol);
      }
    const double tr = (c[0][0] + c[1][1]).real();
    const int rank = static_cast<int>(std::lround(tr));
    if (std::abs(tr - rank) > 1e-6 || rank < 0 || rank > 2) fail(ErrorKind::InvalidInput, "component is not a projector");
    if (rank == 0) {
      part.c.push_back(k);
    } else if (rank == 2) {
      part.f.push_back(k);
    } else {
      part.h.push_back(k);
      if (part.is_real_root(k)) {
        pairs.pairs[k] = {Complex(r, 0), Complex(c[1][0].real() >= 0 ? r : -r, 0)};
      } else {
        const double u = std::sqrt(std::max(0.0, c[0][0].real()));
        pairs.pairs[k] = u > 1e-12 ? UnitPair{Complex(u, 0), c[1][0] / u}
                                   : UnitPair{Complex(0, 0), Complex(std::sqrt(std::max(0.0, c[1][1].real())), 0)};
      }
    }
  }
  validate(part, pairs, 1e-6);
  return {part, pairs};
}

}  // namespace detf
