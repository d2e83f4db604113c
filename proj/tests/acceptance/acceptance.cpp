#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "detf/equiv.hpp"
#include "detf/grambuild.hpp"
#include "detf/hadamard.hpp"
#include "detf/kernels.hpp"
#include "detf/numopt.hpp"
#include "detf/paley.hpp"
#include "detf/search.hpp"
#include "property_helpers.hpp"
#include "tables.hpp"

using namespace detf;

namespace {

// Empty detail means pass.
using Check = std::function<std::string()>;

int failures = 0;

void criterion(int id, const char* what, double budget_s, const Check& check) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  try {
    detail = check();
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (detail.empty() && secs > budget_s) {
    std::ostringstream os;
    os << "over budget of " << budget_s << " s";
    detail = os.str();
  }
  const bool pass = detail.empty();
  failures += !pass;
  std::printf("%s AC%d %s (%.2f s)%s%s\n", pass ? "PASS" : "FAIL", id, what, secs, pass ? "" : ": ", detail.c_str());
  std::fflush(stdout);
}

IntMatrix row_matrix(const tables::TableRow& r) { return assemble(hex_decode(r.a, r.n), hex_decode(r.b, r.n)); }

std::string verify_rows(const std::vector<tables::TableRow>& rows) {
  for (const auto& r : rows) {
    const std::string tag = std::to_string(r.n) + " " + r.a + " " + r.b;
    const SignVector a = hex_decode(r.a, r.n);
    const IntMatrix h = row_matrix(r);
    if (!satisfies_skew_constraint(a) || !is_skew_hadamard(h)) return tag + " is not skew Hadamard";
    const GramMatrix g = gram_M(h);
    if (!is_exact_etf_view(*g.exact())) return tag + " exact view fails";
    const Configuration phi = configuration_from_gram(g, r.n);
    if (!is_etf(phi, 1e-9)) return tag + " is not an ETF at 1e-9";
    if (!is_regular(phi)) return tag + " is not regular";
  }
  return {};
}

std::string type_list(const std::vector<SolutionRecord>& recs) {
  std::vector<std::string> t;
  for (const auto& r : recs) t.push_back(r.type.str());
  std::sort(t.begin(), t.end());
  std::string s;
  for (const auto& x : t) s += (s.empty() ? "" : ",") + x;
  return s;
}

// Every tabulated row lies in exactly one class, and that class carries the row's type.
std::string match_rows(int n, const std::vector<SolutionRecord>& recs) {
  std::vector<GramMatrix> reps;
  for (const auto& r : recs) reps.push_back(gram_M(r.solution().matrix()));
  for (const auto& row : tables::rows_for(n)) {
    const GramMatrix g = gram_M(row_matrix(row));
    const std::string tag = std::to_string(n) + " " + row.a + " " + row.b;
    if (paley_type(g, paley_references(n)).str() != row.type) return tag + " has the wrong Paley type";
    int hits = 0, hit = -1;
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (are_equivalent(g, reps[i]).equivalent) ++hits, hit = static_cast<int>(i);
    if (hits != 1) return tag + " matches " + std::to_string(hits) + " classes";
    if (recs[hit].type.str() != row.type) return tag + " lands in a class of type " + recs[hit].type.str();
  }
  return {};
}

std::string expect_classes(int n, const std::string& types) {
  const auto recs = classify(n);
  if (type_list(recs) != types) return "n=" + std::to_string(n) + " gave {" + type_list(recs) + "}";
  return match_rows(n, recs);
}

std::string idempotent_systems() {
  for (int n = 1; n <= 16; ++n)
    for (bool nega : {false, true}) {
      const int order = nega ? 2 * n : n;
      std::vector<CycloMatrix> ks;
      for (int k = 0; k < order; ++k)
        if (!nega || k % 2 == 1) ks.push_back(props::exact_kernel(n, order, k, nega));
      CycloMatrix sum(n, n, order, n);
      for (const auto& k : ks) sum = sum + k;
      const std::string tag = "n=" + std::to_string(n) + (nega ? " nega" : "");
      if (!sum.equals(CycloMatrix::identity(n, order))) return tag + " incomplete";
      for (std::size_t a = 0; a < ks.size(); ++a) {
        if (!(ks[a] * ks[a]).equals(ks[a]) || !ks[a].adjoint().equals(ks[a])) return tag + " not a projection";
        for (std::size_t b = a + 1; b < ks.size(); ++b)
          if (!(ks[a] * ks[b]).is_zero()) return tag + " not orthogonal";
      }
    }
  return {};
}

std::string orbit_blocks() {
  std::mt19937_64 rng(11);
  for (int n = 2; n <= 8; ++n)
    for (auto fl : {DihedralFlavor::Strict, DihedralFlavor::Projective})
      for (int t = 0; t < 100; ++t) {
        const auto s = analyze_gram_structure(gram(dihedral_orbit(props::random_unit(rng, n), fl)));
        const auto want = fl == DihedralFlavor::Strict ? GramStructure::Strict : GramStructure::Projective;
        if (s.ambiguous || s.flavor != want) return "orbit block structure fails at n=" + std::to_string(n);
      }
  return {};
}

std::string exact_builders() {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 6;
    const auto fl = t % 2 ? DihedralFlavor::Strict : DihedralFlavor::Projective;
    const auto p = props::random_partition(rng, n, fl, 0.35);
    const CycloMatrix x = build_tight_idempotent_exact(p, props::random_exact_pairs(rng, p));
    if (!(x * x).equals(x) || !x.adjoint().equals(x) || !x.trace_equals(BigRational(n)))
      return "instance " + std::to_string(t) + " is not a rank-n projection";
  }
  return {};
}

std::string regularity_equivalence() {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 7;
    const auto fl = t % 2 ? DihedralFlavor::Strict : DihedralFlavor::Projective;
    const auto p = props::random_partition(rng, n, fl, 0.3);
    const GramMatrix g = build_tight_gram(p, props::random_pairs(rng, p));
    ComplexMatrix off = g.matrix().topLeftCorner(n, n);
    off.diagonal().setZero();
    const bool imaginary = off.real().cwiseAbs().maxCoeff() <= 1e-12;
    Eigen::JacobiSVD<ComplexMatrix> svd(g.matrix().topRightCorner(n, n));
    const bool invertible = svd.singularValues()(n - 1) > 1e-8 * svd.singularValues()(0);
    const bool regular = is_regular_gram(p);
    if (regular != imaginary || regular != invertible) return "regularity criteria disagree on instance " + std::to_string(t);
  }
  return {};
}

}  // namespace

int main() {
  std::printf("kernel backend: %s\n", kernels::backend_name(kernels::active_backend()));

  criterion(1, "complete table rows are regular ETFs", 10, [] { return verify_rows(tables::complete_table()); });

  criterion(2, "classification n = 2..14", 600, [] {
    const std::map<int, std::size_t> counts{{2, 1}, {4, 1}, {6, 1}, {8, 2}, {10, 1}, {12, 3}, {14, 1}};
    for (const auto& [n, want] : counts) {
      const auto recs = classify(n);
      if (recs.size() != want) return "n=" + std::to_string(n) + " gave " + std::to_string(recs.size()) + " classes";
      if (auto d = match_rows(n, recs); !d.empty()) return d;
    }
    return std::string();
  });

  criterion(3, "no solutions at n = 18", 1800, [] {
    const auto sols = enumerate(18);
    return sols.empty() ? std::string() : std::to_string(sols.size()) + " solutions";
  });

  criterion(4, "classification n = 16, 20, 22", 5400, [] {
    if (auto d = expect_classes(16, "-,-,P"); !d.empty()) return d;
    if (auto d = expect_classes(20, "CDP,DP"); !d.empty()) return d;
    return expect_classes(22, "P");
  });

  criterion(5, "partial table rows are regular ETFs", 10, [] { return verify_rows(tables::partial_table()); });

  criterion(6, "no 2-circulant solutions for n = 2, 4, 6, 8", 60, [] {
    for (int n : {2, 4, 6, 8})
      if (!enumerate_2circulant(n).empty()) return "solutions at n=" + std::to_string(n);
    return std::string();
  });

  criterion(7, "Paley constructions", 120, [] {
    for (int q : {3, 7, 11, 19, 23, 27}) {
      const FiniteField f(q);
      if (!is_skew_hadamard(paley_hadamard(f))) return "Paley(" + std::to_string(q) + ") is not skew Hadamard";
      const GramMatrix g = paley_gram(f);
      const double mu = coherence(configuration_from_gram(g, (q + 1) / 2));
      if (std::abs(mu - 1 / std::sqrt(double(q))) > 1e-12) return "Paley(" + std::to_string(q) + ") coherence off";
      if (q <= 11 && !are_equivalent(g, g.conjugate()).equivalent)
        return "Paley(" + std::to_string(q) + ") is not switching equivalent to its conjugate";
    }
    const FiniteField f7(7);
    if (are_equivalent(double_paley_gram(f7), conj_double_paley_gram(f7)).equivalent) return std::string("DP(7) ~ CDP(7)");
    return std::string();
  });

  criterion(8, "shm and M Grams related by diag(I, iI)", 600, [] {
    for (const auto& r : tables::complete_table()) {
      const IntMatrix h = row_matrix(r);
      const GramMatrix shm = gram_lemma_shm(h), m = gram_M(h);
      const auto res = are_equivalent(shm, m);
      const std::string tag = std::to_string(r.n) + " " + r.a + " " + r.b;
      if (!res.equivalent) return tag + " inequivalent";
      if (!verify_certificate(shm, m, *res.certificate)) return tag + " certificate does not verify";
      for (int i = 0; i < 2 * r.n; ++i)
        if (res.certificate->sigma[i] != i || res.certificate->quarter_turns[i] != (i < r.n ? 0 : 1))
          return tag + " certificate is not diag(I, iI)";
    }
    return std::string();
  });

  criterion(9, "structural property suites", 600, [] {
    for (auto* f : {idempotent_systems, orbit_blocks, exact_builders, regularity_equivalence})
      if (auto d = f(); !d.empty()) return d;
    return std::string();
  });

  criterion(10, "numerical discovery at n = 2, 4, 6", 300, [] {
    for (int n : {2, 4, 6}) {
      MinimizeConfig c;
      c.p = 4;
      c.restarts = 50;
      const auto r = discover(n, c);
      if (!r.ok()) return "n=" + std::to_string(n) + " " + to_string(r.stage) + ": " + r.detail;
      if (!is_skew_hadamard(r.record->solution().matrix())) return "n=" + std::to_string(n) + " record is not skew";
    }
    for (int n : {2, 4, 6})
      for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        MinimizeConfig c;
        c.n = n;
        c.p = 4;
        c.restarts = 1;
        c.seed = seed;
        c.flavor = DihedralFlavor::Strict;
        const auto r = minimize_fiducial(c);
        if (r.coherence - welch_bound(2 * n, n) <= 1e-4)
          return "strict orbit reached the Welch bound at n=" + std::to_string(n) + " seed " + std::to_string(seed);
      }
    return std::string();
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures ? 1 : 0;
}
