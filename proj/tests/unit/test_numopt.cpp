#include <gtest/gtest.h>

#include <random>

#include "detf/numopt.hpp"

using namespace detf;

namespace {

ComplexVector random_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v[i] = Complex(g(rng), g(rng));
  return v;
}

double full_potential(const ComplexVector& v, DihedralFlavor flavor, double p) {
  return frame_potential(dihedral_orbit(v / v.norm(), flavor), p);
}

}  // namespace

TEST(Config, Validation) {
  MinimizeConfig c;
  EXPECT_NO_THROW(validate(c));
  auto bad = [](auto edit) {
    MinimizeConfig c;
    edit(c);
    EXPECT_THROW(validate(c), Error);
  };
  bad([](MinimizeConfig& c) { c.n = 0; });
  bad([](MinimizeConfig& c) { c.restarts = 0; });
  bad([](MinimizeConfig& c) { c.max_iterations = 0; });
  bad([](MinimizeConfig& c) { c.angle_rel_tol = 0; });
  bad([](MinimizeConfig& c) { c.angle_rel_tol = 0.5; });
  bad([](MinimizeConfig& c) { c.p = 0.5; });
}

TEST(OrbitPotential, MatchesFullFramePotential) {
  std::mt19937_64 rng(1);
  for (auto flavor : {DihedralFlavor::Projective, DihedralFlavor::Strict})
    for (int n = 1; n <= 9; ++n)
      for (double p : {2.0, 3.0, 4.0}) {
        ComplexVector v = random_vector(rng, n);
        OrbitPotential f(n, flavor, p);
        const double want = full_potential(v, flavor, p);
        EXPECT_NEAR(f(v), want, 1e-10 * want) << n << " " << p;
      }
}

TEST(OrbitPotential, RealParameterForm) {
  std::mt19937_64 rng(2);
  const int n = 6;
  ComplexVector v = random_vector(rng, n);
  std::vector<double> x(2 * n);
  for (int i = 0; i < n; ++i) {
    x[i] = v[i].real();
    x[n + i] = v[i].imag();
  }
  OrbitPotential f(n, DihedralFlavor::Projective, 4);
  EXPECT_NEAR(f(x.data()), f(v), 1e-12);
}

TEST(OrbitPotential, Invariances) {
  std::mt19937_64 rng(3);
  for (auto flavor : {DihedralFlavor::Projective, DihedralFlavor::Strict}) {
    const int n = 7;
    OrbitPotential f(n, flavor, 4);
    ComplexVector v = random_vector(rng, n);
    const double base = f(v);
    EXPECT_NEAR(f(ComplexVector(v * std::polar(2.5, 0.7))), base, 1e-10);
    // Any orbit member generates the same orbit.
    Configuration orbit = dihedral_orbit(v, flavor);
    for (int j : {1, 3, n + 2}) EXPECT_NEAR(f(ComplexVector(orbit.matrix().col(j))), base, 1e-10) << j;
  }
}

TEST(OrbitPotential, LowerBoundAtTightness) {
  std::mt19937_64 rng(4);
  for (int n = 2; n <= 8; ++n) {
    OrbitPotential f(n, DihedralFlavor::Projective, 2);
    const double tight = 4.0 * n * n / n;
    for (int t = 0; t < 5; ++t) EXPECT_GE(f(random_vector(rng, n)), tight - 1e-9);
  }
}

TEST(Minimize, SeededReproducibility) {
  MinimizeConfig c;
  c.n = 4;
  c.restarts = 3;
  c.seed = 9;
  auto a = minimize_fiducial(c), b = minimize_fiducial(c);
  EXPECT_EQ(a.restart_values, b.restart_values);
  EXPECT_EQ(a.best_restart, b.best_restart);
  EXPECT_EQ(a.v, b.v);
  c.jobs = 2;
  auto d = minimize_fiducial(c);
  EXPECT_EQ(a.restart_values, d.restart_values);
}

TEST(Minimize, HistoryNonIncreasingAndBestIsMinimum) {
  MinimizeConfig c;
  c.n = 6;
  c.restarts = 4;
  auto r = minimize_fiducial(c);
  ASSERT_FALSE(r.history.empty());
  for (std::size_t i = 1; i < r.history.size(); ++i) EXPECT_LE(r.history[i], r.history[i - 1]);
  EXPECT_EQ(r.restart_values.size(), 4u);
  for (double v : r.restart_values) EXPECT_GE(v, r.value);
  EXPECT_EQ(r.restart_values[r.best_restart], r.value);
  EXPECT_NEAR(r.v.norm(), 1, 1e-12);
}

TEST(Minimize, ConvergedReachesWelch) {
  for (int n : {2, 4}) {
    MinimizeConfig c;
    c.n = n;
    c.restarts = 20;
    auto r = minimize_fiducial(c);
    ASSERT_TRUE(r.converged) << n;
    const double welch = welch_bound(2 * n, n);
    EXPECT_LE(r.coherence - welch, 1e-7 * welch) << n;
    EXPECT_LE(r.angle_spread, c.angle_rel_tol * welch);
  }
}

TEST(Minimize, StrictStaysAwayFromWelch) {
  MinimizeConfig c;
  c.n = 4;
  c.restarts = 5;
  c.flavor = DihedralFlavor::Strict;
  auto r = minimize_fiducial(c);
  EXPECT_FALSE(r.converged);
  EXPECT_GT(r.coherence - welch_bound(8, 4), 1e-4);
}

TEST(Discover, RejectsOddN) {
  try {
    discover(3, MinimizeConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Unsupported);
  }
}

TEST(Discover, SmallCasesSucceed) {
  for (int n : {2, 4}) {
    MinimizeConfig c;
    c.restarts = 20;
    auto r = discover(n, c);
    ASSERT_TRUE(r.ok()) << n << " " << to_string(r.stage) << " " << r.detail;
    EXPECT_EQ(r.record->n, n);
    EXPECT_TRUE(is_skew_hadamard(r.record->solution().matrix()));
    EXPECT_EQ(r.record->type.str(), n == 2 ? "P" : "P=DP=CDP");
  }
}

TEST(Discover, ReportsNoConvergence) {
  MinimizeConfig c;
  c.restarts = 1;
  c.max_iterations = 5;
  auto r = discover(6, c);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.stage, DiscoverStage::NoConvergence);
}
