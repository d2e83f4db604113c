#include <gtest/gtest.h>

#include <random>

#include "detf/frames.hpp"
#include "detf/hadamard.hpp"
#include "detf/paley.hpp"
#include "property_helpers.hpp"
#include "tables.hpp"

using namespace detf;
using namespace detf::props;

namespace {

ComplexMatrix random_configuration(std::mt19937_64& rng, int n, int big_n) {
  ComplexMatrix phi(n, big_n);
  for (int j = 0; j < big_n; ++j) phi.col(j) = random_unit(rng, n);
  return phi;
}

GramMatrix table_gram(const tables::TableRow& r) {
  return gram_M(assemble(hex_decode(r.a, r.n), hex_decode(r.b, r.n)));
}

}  // namespace

TEST(Gram, Basics) {
  ComplexMatrix e = ComplexMatrix::Identity(2, 2);
  EXPECT_LT(max_abs_diff(gram(Configuration(e)).matrix(), e), 1e-15);
  ComplexMatrix rep(2, 2);
  rep << 1, 1, 0, 0;
  EXPECT_LT(max_abs_diff(gram(Configuration(rep)).matrix(), ComplexMatrix::Ones(2, 2)), 1e-15);
}

TEST(Gram, PositiveSemidefinite) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 10; ++t) {
    GramMatrix g = gram(Configuration(random_configuration(rng, 3, 7)));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g.matrix());
    EXPECT_GT(es.eigenvalues().minCoeff(), -1e-12);
  }
}

TEST(Configuration, RejectsNonUnitColumns) {
  ComplexMatrix phi = ComplexMatrix::Identity(2, 2) * 2.0;
  EXPECT_THROW(Configuration{phi}, Error);
}

TEST(GramMatrix, RejectsNonHermitianOrBadDiagonal) {
  ComplexMatrix g(2, 2);
  g << 1, 0.5, 0.2, 1;
  EXPECT_THROW(GramMatrix{g}, Error);
  g << 2, 0, 0, 1;
  EXPECT_THROW(GramMatrix{g}, Error);
}

TEST(Welch, Values) {
  EXPECT_NEAR(welch_bound(4, 2), 0.57735026918962576, 1e-15);
  for (int n = 2; n <= 20; ++n) {
    EXPECT_NEAR(welch_bound(2 * n, n), 1 / std::sqrt(2.0 * n - 1), 1e-15);
    EXPECT_NEAR(welch_bound(n + 1, n), 1.0 / n, 1e-15);
  }
  EXPECT_THROW(welch_bound(3, 3), Error);
}

TEST(Coherence, Examples) {
  EXPECT_EQ(coherence(Configuration(ComplexMatrix::Identity(3, 3))), 0.0);
  ComplexMatrix rep(2, 2);
  rep << 1, 1, 0, 0;
  EXPECT_NEAR(coherence(Configuration(rep)), 1.0, 1e-15);
  EXPECT_THROW(coherence(Configuration(ComplexMatrix::Identity(2, 1))), Error);
  FiniteField f(3);
  Configuration phi = configuration_from_gram(paley_gram(f), 2);
  EXPECT_NEAR(coherence(phi), 1 / std::sqrt(3.0), 1e-12);
}

TEST(Tight, Examples) {
  auto t = is_tight(Configuration(ComplexMatrix::Identity(3, 3)));
  EXPECT_TRUE(t.tight);
  EXPECT_DOUBLE_EQ(t.constant, 1.0);
  ComplexMatrix rep(2, 2);
  rep << 1, 1, 0, 0;
  EXPECT_FALSE(is_tight(Configuration(rep)).tight);
  IntMatrix h(4, 4);
  h << 1, -1, -1, -1, 1, 1, 1, -1, 1, -1, 1, 1, 1, 1, -1, 1;
  auto f = is_tight(configuration_from_gram(gram_lemma_shm(h), 2));
  EXPECT_TRUE(f.tight);
  EXPECT_DOUBLE_EQ(f.constant, 2.0);
}

TEST(Etf, TableRowTwo) {
  Configuration phi = configuration_from_gram(table_gram(tables::complete_table()[0]), 2);
  EXPECT_TRUE(is_etf(phi));
  EXPECT_NEAR(coherence(phi), welch_bound(4, 2), 1e-12);
}

TEST(Etf, SquareConfigurationRejected) {
  EXPECT_THROW(is_etf(Configuration(ComplexMatrix::Identity(2, 2))), Error);
}

TEST(Etf, RandomConfigurationIsNot) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) EXPECT_FALSE(is_etf(Configuration(random_configuration(rng, 3, 6))));
}

TEST(Etf, AngleMatchesWelchWhenTrue) {
  for (const auto& r : tables::complete_table()) {
    if (r.n > 12) continue;
    Configuration phi = configuration_from_gram(table_gram(r), r.n);
    ASSERT_TRUE(is_etf(phi));
    EXPECT_LE(std::abs(coherence(phi) - welch_bound(2 * r.n, r.n)), 1e-7 * welch_bound(2 * r.n, r.n));
  }
}

TEST(Potential, Examples) {
  for (double p : {1.0, 2.0, 4.0, 5.5})
    EXPECT_NEAR(frame_potential(Configuration(ComplexMatrix::Identity(3, 3)), p), 3.0, 1e-14);
  ComplexMatrix rep(2, 2);
  rep << 1, 1, 0, 0;
  EXPECT_NEAR(frame_potential(Configuration(rep), 4), 4.0, 1e-14);
  GramMatrix g = table_gram(tables::complete_table()[0]);
  EXPECT_NEAR(frame_potential(g, 4), 16.0 / 3.0, 1e-12);
}

TEST(Potential, TightFramePotentialTwo) {
  std::mt19937_64 rng(3);
  for (const auto& r : tables::complete_table()) {
    if (r.n > 10) continue;
    Configuration phi = configuration_from_gram(table_gram(r), r.n);
    const double nn = 2.0 * r.n;
    EXPECT_NEAR(frame_potential(phi, 2), nn * nn / r.n, 1e-8);
    EXPECT_NEAR(frame_potential(phi, 2), gram(phi).matrix().squaredNorm(), 1e-9);
  }
  Configuration rnd(random_configuration(rng, 3, 5));
  EXPECT_NEAR(frame_potential(rnd, 2), gram(rnd).matrix().squaredNorm(), 1e-12);
}

TEST(Dihedral, GeneratorsSatisfyRelations) {
  for (int n = 2; n <= 8; ++n)
    for (auto fl : {DihedralFlavor::Strict, DihedralFlavor::Projective}) {
      auto [m, t] = dihedral_generators(n, fl);
      ComplexMatrix mn = ComplexMatrix::Identity(n, n);
      for (int k = 0; k < n; ++k) mn = mn * m;
      ComplexMatrix id = ComplexMatrix::Identity(n, n);
      if (fl == DihedralFlavor::Strict) {
        EXPECT_LT(max_abs_diff(mn, id), 1e-12);
        EXPECT_LT(max_abs_diff(t * t, id), 1e-12);
        EXPECT_LT(max_abs_diff(t * m, m.inverse() * t), 1e-12);
      } else {
        // M^n = -I: the relations only hold up to scalars.
        EXPECT_LT(max_abs_diff(mn, -id), 1e-12);
        EXPECT_LT(max_abs_diff(t * t, id), 1e-12);
        EXPECT_LT(max_abs_diff(t * m * t, m.adjoint()), 1e-12);
      }
    }
}

TEST(Dihedral, StrictDegenerateOrbit) {
  ComplexVector v(2);
  v << 1, 0;
  Configuration phi = dihedral_orbit(v, DihedralFlavor::Strict);
  ASSERT_EQ(phi.count(), 4);
  for (int j = 0; j < 4; ++j) EXPECT_LT(std::abs(phi.matrix()(0, j) - 1.0) + std::abs(phi.matrix()(1, j)), 1e-15);
}

TEST(Dihedral, ZeroVectorRejected) {
  EXPECT_THROW(dihedral_orbit(ComplexVector::Zero(3), DihedralFlavor::Projective), Error);
}

TEST(Dihedral, ProjectiveTwoHasRealB) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    ComplexVector v = random_unit(rng, 2);
    GramMatrix g = gram(dihedral_orbit(v, DihedralFlavor::Projective));
    auto blocks = analyze_gram_structure(g);
    EXPECT_EQ(blocks.flavor, GramStructure::Projective);
    EXPECT_LT(blocks.b.imag().cwiseAbs().maxCoeff(), 1e-12);
  }
}

// Block structure of orbit Grams: 100 random fiducials per flavor and dimension.
TEST(Dihedral, OrbitGramHasBlockStructure) {
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 8; ++n)
    for (auto fl : {DihedralFlavor::Strict, DihedralFlavor::Projective})
      for (int t = 0; t < 100; ++t) {
        GramMatrix g = gram(dihedral_orbit(random_unit(rng, n), fl));
        auto s = analyze_gram_structure(g);
        EXPECT_EQ(s.flavor, fl == DihedralFlavor::Strict ? GramStructure::Strict : GramStructure::Projective)
            << n << " " << to_string(fl);
        EXPECT_FALSE(s.ambiguous);
      }
}

TEST(Structure, IdentityIsAmbiguous) {
  auto s = analyze_gram_structure(GramMatrix(ComplexMatrix::Identity(6, 6)));
  EXPECT_EQ(s.flavor, GramStructure::Strict);
  EXPECT_TRUE(s.ambiguous);
}

TEST(Structure, RandomIsNeither) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 10; ++t)
    EXPECT_EQ(analyze_gram_structure(gram(Configuration(random_configuration(rng, 3, 6)))).flavor,
              GramStructure::Neither);
}

TEST(Structure, OddSizeRejected) {
  EXPECT_THROW(analyze_gram_structure(GramMatrix(ComplexMatrix::Identity(3, 3))), Error);
}

TEST(Regular, Examples) {
  const int n = 4;
  ComplexVector v = ComplexVector::Ones(n);
  v(n - 1) = 0;
  EXPECT_FALSE(is_regular(dihedral_orbit(v, DihedralFlavor::Strict)));
  ComplexMatrix phi(n, 2 * n);
  phi << ComplexMatrix::Identity(n, n), ComplexMatrix::Identity(n, n);
  EXPECT_TRUE(is_regular(Configuration(phi)));
  EXPECT_THROW(is_regular(Configuration(ComplexMatrix::Identity(n, n))), Error);
  for (const auto& r : tables::complete_table())
    if (r.n <= 14) EXPECT_TRUE(is_regular(configuration_from_gram(table_gram(r), r.n))) << r.a << "," << r.b;
}

TEST(Regular, InvariantUnderColumnPhases) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ang(0, 6.283185307179586);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 5;
    ComplexVector v = random_unit(rng, n);
    if (t % 3 == 0) v(n - 1) = 0, v /= v.norm();
    Configuration phi = dihedral_orbit(v, t % 2 ? DihedralFlavor::Strict : DihedralFlavor::Projective);
    ComplexMatrix m = phi.matrix();
    for (int j = 0; j < m.cols(); ++j) m.col(j) *= std::polar(1.0, ang(rng));
    EXPECT_EQ(is_regular(phi), is_regular(Configuration(m)));
  }
}

TEST(Factor, RoundTripOnTableGrams) {
  for (const auto& r : tables::complete_table()) {
    GramMatrix g = table_gram(r);
    Configuration phi = configuration_from_gram(g, r.n);
    EXPECT_LT(max_abs_diff(gram(phi).matrix(), g.matrix()), 1e-8);
  }
  Configuration phi = configuration_from_gram(table_gram(tables::complete_table()[0]), 2);
  EXPECT_NEAR(coherence(phi), 1 / std::sqrt(3.0), 1e-12);
}

TEST(Factor, RejectsWrongShape) {
  EXPECT_THROW(configuration_from_gram(GramMatrix(ComplexMatrix::Identity(2, 2)), 2), Error);
  EXPECT_THROW(configuration_from_gram(GramMatrix(ComplexMatrix::Identity(4, 4)), 2), Error);
}
