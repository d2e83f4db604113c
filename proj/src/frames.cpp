#include "detf/frames.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

#include "detf/kernels.hpp"

namespace detf {

const char* to_string(DihedralFlavor f) { return f == DihedralFlavor::Strict ? "strict" : "projective"; }

const char* to_string(GramStructure s) {
  switch (s) {
    case GramStructure::Strict: return "strict";
    case GramStructure::Projective: return "projective";
    case GramStructure::Neither: return "neither";
  }
  return "neither";
}

Configuration::Configuration(ComplexMatrix phi, double tol) : phi_(std::move(phi)) {
  if (phi_.rows() == 0 || phi_.cols() == 0) fail(ErrorKind::InvalidInput, "empty configuration");
  for (Eigen::Index j = 0; j < phi_.cols(); ++j)
    if (std::abs(phi_.col(j).norm() - 1.0) > tol) fail(ErrorKind::InvalidInput, "configuration column is not unit norm");
}

GramMatrix::GramMatrix(ComplexMatrix g, double tol) : g_(std::move(g)) {
  if (g_.rows() != g_.cols()) fail(ErrorKind::InvalidInput, "Gram matrix must be square");
  if (max_abs_diff(g_, g_.adjoint()) > tol) fail(ErrorKind::InvalidInput, "Gram matrix is not Hermitian");
  for (Eigen::Index i = 0; i < g_.rows(); ++i)
    if (std::abs(g_(i, i) - 1.0) > tol) fail(ErrorKind::InvalidInput, "Gram diagonal is not 1");
}

GramMatrix::GramMatrix(ComplexMatrix g, GaussIntMatrix exact, double tol) : GramMatrix(std::move(g), tol) {
  const std::size_t n = static_cast<std::size_t>(g_.rows());
  if (exact.rows() != n || exact.cols() != n) fail(ErrorKind::InvalidInput, "exact view has wrong size");
  if (!(exact.adjoint() == exact)) fail(ErrorKind::InvalidInput, "exact view is not Hermitian");
  for (std::size_t i = 0; i < n; ++i)
    if (!(exact(i, i) == GaussInt(0))) fail(ErrorKind::InvalidInput, "exact view diagonal must be zero");
  exact_ = std::move(exact);
}

GramMatrix GramMatrix::conjugate() const {
  if (!exact_) return GramMatrix(g_.conjugate());
  GaussIntMatrix e = *exact_;
  for (std::size_t r = 0; r < e.rows(); ++r)
    for (std::size_t c = 0; c < e.cols(); ++c) e(r, c) = e(r, c).conj();
  return GramMatrix(g_.conjugate(), std::move(e));
}

GramMatrix gram(const Configuration& phi) {
  ComplexMatrix g = phi.matrix().adjoint() * phi.matrix();
  // Exact Hermitian symmetry and unit diagonal up to the column normalisation.
  g = (g + g.adjoint()) * 0.5;
  return GramMatrix(std::move(g), 1e-8);
}

double welch_bound(int big_n, int n) {
  if (big_n <= n || n < 1) fail(ErrorKind::InvalidInput, "Welch bound needs N > n >= 1");
  return std::sqrt(double(big_n - n) / (double(n) * (big_n - 1)));
}

double coherence(const GramMatrix& g) {
  if (g.size() < 2) fail(ErrorKind::InvalidInput, "coherence needs at least two vectors");
  double m = 0;
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j)
      if (i != j) m = std::max(m, std::abs(g(i, j)));
  return m;
}

double coherence(const Configuration& phi) {
  if (phi.count() < 2) fail(ErrorKind::InvalidInput, "coherence needs at least two vectors");
  return coherence(gram(phi));
}

Tightness is_tight(const Configuration& phi, double tol) {
  const double a = double(phi.count()) / phi.dimension();
  ComplexMatrix s = phi.matrix() * phi.matrix().adjoint();
  ComplexMatrix target = ComplexMatrix::Identity(phi.dimension(), phi.dimension()) * a;
  return {max_abs_diff(s, target) <= tol, a};
}

double angle_spread(const GramMatrix& g) {
  double lo = INFINITY, hi = 0, sum = 0;
  long cnt = 0;
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j) {
      if (i == j) continue;
      double m = std::abs(g(i, j));
      lo = std::min(lo, m);
      hi = std::max(hi, m);
      sum += m;
      ++cnt;
    }
  if (cnt == 0) return 0;
  double mean = sum / cnt;
  return mean > 0 ? (hi - lo) / mean : INFINITY;
}

static double mean_offdiag(const GramMatrix& g) {
  double sum = 0;
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j)
      if (i != j) sum += std::abs(g(i, j));
  return sum / (double(g.size()) * (g.size() - 1));
}

bool is_etf_gram(const GramMatrix& g, int n, double rel_tol) {
  const int big_n = g.size();
  if (big_n <= n) fail(ErrorKind::InvalidInput, "ETF test needs N > n");
  const double w = welch_bound(big_n, n);
  if (angle_spread(g) > rel_tol) return false;
  if (std::abs(mean_offdiag(g) - w) > rel_tol * w) return false;
  // Tightness error grows like the square root of the angle error.
  const double a = double(big_n) / n;
  ComplexMatrix sq = g.matrix() * g.matrix();
  return max_abs_diff(sq, a * g.matrix()) <= std::sqrt(rel_tol) * a;
}

bool is_etf(const Configuration& phi, double rel_tol) {
  if (phi.count() <= phi.dimension()) fail(ErrorKind::InvalidInput, "ETF test needs N > n");
  if (!is_tight(phi, std::sqrt(rel_tol) * phi.count() / phi.dimension()).tight) return false;
  return is_etf_gram(gram(phi), phi.dimension(), rel_tol);
}

double frame_potential(const GramMatrix& g, double p) {
  if (p < 1) fail(ErrorKind::InvalidInput, "frame potential needs p >= 1");
  const std::size_t cnt = static_cast<std::size_t>(g.size()) * g.size();
  Eigen::MatrixXd re = g.matrix().real(), im = g.matrix().imag();
  return kernels::sum_abs_pow(re.data(), im.data(), cnt, p);
}

double frame_potential(const Configuration& phi, double p) {
  if (p < 1) fail(ErrorKind::InvalidInput, "frame potential needs p >= 1");
  ComplexMatrix g = phi.matrix().adjoint() * phi.matrix();
  Eigen::MatrixXd re = g.real(), im = g.imag();
  return kernels::sum_abs_pow(re.data(), im.data(), static_cast<std::size_t>(g.size()), p);
}

std::pair<ComplexMatrix, ComplexMatrix> dihedral_generators(int n, DihedralFlavor flavor) {
  if (n < 1) fail(ErrorKind::InvalidInput, "dimension must be positive");
  ComplexMatrix m = ComplexMatrix::Zero(n, n), t = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    if (flavor == DihedralFlavor::Strict) {
      m(k, k) = root_of_unity(n, k);
      t(k, (n - k) % n) = 1;
    } else {
      m(k, k) = root_of_unity(2 * n, 2 * k + 1);
      t(k, n - 1 - k) = 1;
    }
  }
  return {m, t};
}

Configuration dihedral_orbit(const ComplexVector& v, DihedralFlavor flavor) {
  const double norm = v.norm();
  if (v.size() == 0 || norm == 0) fail(ErrorKind::InvalidInput, "fiducial vector must be nonzero");
  const int n = static_cast<int>(v.size());
  auto [m, t] = dihedral_generators(n, flavor);
  ComplexMatrix phi(n, 2 * n);
  ComplexVector x = v / norm;
  ComplexVector y = t * x;
  for (int k = 0; k < n; ++k) {
    phi.col(k) = x;
    phi.col(n + k) = y;
    x = m * x;
    y = m * y;
  }
  return Configuration(std::move(phi));
}

bool is_regular(const Configuration& phi, double tol) {
  const int n = phi.dimension();
  if (phi.count() != 2 * n) fail(ErrorKind::InvalidInput, "regularity needs N = 2n");
  Eigen::JacobiSVD<ComplexMatrix> svd(phi.matrix().leftCols(n));
  const auto& s = svd.singularValues();
  return s(n - 1) > tol * s(0);
}

static bool hermitian(const ComplexMatrix& a, double tol) { return max_abs_diff(a, a.adjoint()) <= tol; }

GramBlocks analyze_gram_structure(const GramMatrix& g, double tol) {
  if (g.size() % 2) fail(ErrorKind::InvalidInput, "Gram size must be even");
  const int n = g.size() / 2;
  const ComplexMatrix& m = g.matrix();
  GramBlocks out;
  out.a = m.topLeftCorner(n, n);
  out.b = m.topRightCorner(n, n);
  const ComplexMatrix c = m.bottomLeftCorner(n, n), d = m.bottomRightCorner(n, n);
  const bool common = max_abs_diff(c, out.b.transpose()) <= tol && max_abs_diff(d, out.a.transpose()) <= tol &&
                      out.b.imag().cwiseAbs().maxCoeff() <= tol && hermitian(out.a, tol);
  if (!common) return out;
  const bool strict = is_circulant(out.a, tol) && is_circulant(out.b, tol);
  const bool projective = is_negacirculant(out.a, tol) && is_negacirculant(out.b, tol);
  if (strict) {
    out.flavor = GramStructure::Strict;
    out.ambiguous = projective;
  } else if (projective) {
    out.flavor = GramStructure::Projective;
  }
  return out;
}

Configuration configuration_from_gram(const GramMatrix& g, int n, double tol) {
  const int big_n = g.size();
  if (n < 1 || big_n != 2 * n) fail(ErrorKind::NotFactorable, "expected a 2n x 2n Gram of tight constant 2");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g.matrix());
  if (es.info() != Eigen::Success) fail(ErrorKind::NotFactorable, "eigendecomposition failed");
  const auto& lam = es.eigenvalues();  // ascending
  const double etol = std::max(tol, 1e-12) * big_n;
  for (int i = 0; i < big_n; ++i) {
    const double target = i < big_n - n ? 0.0 : 2.0;
    if (std::abs(lam(i) - target) > etol) fail(ErrorKind::NotFactorable, "G/2 is not an idempotent of rank n");
  }
  ComplexMatrix u = es.eigenvectors().rightCols(n);
  ComplexMatrix phi = (u * lam.tail(n).cwiseSqrt().asDiagonal()).adjoint();
  for (Eigen::Index j = 0; j < phi.cols(); ++j) phi.col(j).normalize();
  return Configuration(std::move(phi), 1e-6);
}

}  // namespace detf
