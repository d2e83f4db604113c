#include "detf/numopt.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>
#include <thread>

#include "detf/kernels.hpp"

namespace detf {

void validate(const MinimizeConfig& c) {
  if (c.n < 1) fail(ErrorKind::InvalidInput, "n must be positive");
  if (c.restarts < 1) fail(ErrorKind::InvalidInput, "restarts must be at least 1");
  if (c.max_iterations < 1) fail(ErrorKind::InvalidInput, "max_iterations must be positive");
  if (!(c.angle_rel_tol > 0 && c.angle_rel_tol < 1e-2)) fail(ErrorKind::InvalidInput, "tolerance must lie in (0, 1e-2)");
  if (!(c.p >= 1)) fail(ErrorKind::InvalidInput, "p must be at least 1");
}

OrbitPotential::OrbitPotential(int n, DihedralFlavor flavor, double p)
    : n_(n), flavor_(flavor), p_(p), w_re_(n * n), w_im_(n * n), partner_(n) {
  if (n < 1) fail(ErrorKind::InvalidInput, "n must be positive");
  const bool proj = flavor == DihedralFlavor::Projective;
  const int order = proj ? 2 * n : n;
  for (int m = 0; m < n; ++m)
    for (int k = 0; k < n; ++k) {
      const long long e = proj ? static_cast<long long>(2 * k + 1) * m : static_cast<long long>(k) * m;
      const Complex z = root_of_unity(order, e);
      w_re_[m * n + k] = z.real();
      w_im_[m * n + k] = z.imag();
    }
  for (int k = 0; k < n; ++k) partner_[k] = proj ? n - 1 - k : (n - k) % n;
}

double OrbitPotential::operator()(const double* x) const {
  const int n = n_;
  const double* re = x;
  const double* im = x + n;
  double norm2 = 0;
  for (int k = 0; k < n; ++k) norm2 += re[k] * re[k] + im[k] * im[k];
  if (!(norm2 > 0)) return INFINITY;
  const double inv = 1.0 / norm2;
  // Stack buffers: n is at most 64 in practice, fall back to the heap beyond.
  std::vector<double> buf(8 * n);
  double *wr = buf.data(), *wi = wr + n, *cr = wi + n, *ci = cr + n;
  double *ar = ci + n, *ai = ar + n, *br = ai + n, *bi = br + n;
  for (int k = 0; k < n; ++k) {
    const int t = partner_[k];
    wr[k] = (re[k] * re[k] + im[k] * im[k]) * inv;
    wi[k] = 0;
    // conj(v_k) v_t
    cr[k] = (re[k] * re[t] + im[k] * im[t]) * inv;
    ci[k] = (re[k] * im[t] - im[k] * re[t]) * inv;
  }
  kernels::complex_matvec(w_re_.data(), w_im_.data(), n, n, wr, wi, ar, ai);
  kernels::complex_matvec(w_re_.data(), w_im_.data(), n, n, cr, ci, br, bi);
  return 2.0 * n * (kernels::sum_abs_pow(ar, ai, n, p_) + kernels::sum_abs_pow(br, bi, n, p_));
}

double OrbitPotential::operator()(const ComplexVector& v) const {
  if (v.size() != n_) fail(ErrorKind::InvalidInput, "vector length mismatch");
  std::vector<double> x(2 * n_);
  for (int k = 0; k < n_; ++k) {
    x[k] = v[k].real();
    x[n_ + k] = v[k].imag();
  }
  return (*this)(x.data());
}

namespace {

struct Run {
  std::vector<double> x;
  double value = INFINITY;
  std::vector<double> history;
};

// Nelder-Mead with dimension-adaptive coefficients; keeps the best point across
// re-initialisations of the simplex around it.
class NelderMead {
 public:
  NelderMead(const OrbitPotential& f, int budget) : f_(f), budget_(budget) {}

  Run minimize(std::vector<double> x0) {
    Run run;
    run.x = x0;
    run.value = eval(x0.data());
    run.history.push_back(run.value);
    double step = 0.25;
    while (evals_ < budget_) {
      const double before = run.value;
      simplex_search(run, step);
      // Re-seed a smaller simplex at the best point until it stops improving.
      if (run.value < before - 1e-15 * std::abs(before))
        step = std::max(step * 0.1, 1e-9);
      else if (step > 1e-9)
        step *= 0.01;
      else
        break;
    }
    return run;
  }

 private:
  double eval(const double* x) {
    ++evals_;
    return f_(x);
  }

  void record(Run& run, const std::vector<double>& x, double v) {
    if (v < run.value) {
      run.value = v;
      run.x = x;
      run.history.push_back(v);
    }
  }

  void simplex_search(Run& run, double step) {
    const int d = static_cast<int>(run.x.size());
    const double alpha = 1.0, gamma = 1.0 + 2.0 / d, rho = 0.75 - 0.5 / d, sigma = 1.0 - 1.0 / d;
    std::vector<std::vector<double>> pts(d + 1, run.x);
    std::vector<double> vals(d + 1, run.value);
    const double scale = std::max(1e-3, *std::max_element(run.x.begin(), run.x.end(),
                                                          [](double a, double b) { return std::abs(a) < std::abs(b); }));
    for (int i = 0; i < d; ++i) {
      pts[i + 1][i] += step * std::abs(scale);
      vals[i + 1] = eval(pts[i + 1].data());
      record(run, pts[i + 1], vals[i + 1]);
    }
    std::vector<int> idx(d + 1);
    std::vector<double> c(d), xr(d), xe(d), xc(d);
    while (evals_ < budget_) {
      for (int i = 0; i <= d; ++i) idx[i] = i;
      std::sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] < vals[b]; });
      const int best = idx[0], worst = idx[d], second = idx[d - 1];
      double fspread = vals[worst] - vals[best], xspread = 0;
      for (int i = 0; i <= d; ++i)
        for (int j = 0; j < d; ++j) xspread = std::max(xspread, std::abs(pts[i][j] - pts[best][j]));
      if (fspread <= 1e-16 * std::abs(vals[best]) || xspread < 1e-12) return;
      std::fill(c.begin(), c.end(), 0.0);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) c[j] += pts[idx[i]][j] / d;
      for (int j = 0; j < d; ++j) xr[j] = c[j] + alpha * (c[j] - pts[worst][j]);
      const double fr = eval(xr.data());
      if (fr < vals[best]) {
        for (int j = 0; j < d; ++j) xe[j] = c[j] + gamma * (xr[j] - c[j]);
        const double fe = eval(xe.data());
        if (fe < fr) {
          pts[worst] = xe;
          vals[worst] = fe;
        } else {
          pts[worst] = xr;
          vals[worst] = fr;
        }
      } else if (fr < vals[second]) {
        pts[worst] = xr;
        vals[worst] = fr;
      } else {
        const bool outside = fr < vals[worst];
        for (int j = 0; j < d; ++j) xc[j] = outside ? c[j] + rho * (xr[j] - c[j]) : c[j] + rho * (pts[worst][j] - c[j]);
        const double fc = eval(xc.data());
        if (fc < (outside ? fr : vals[worst])) {
          pts[worst] = xc;
          vals[worst] = fc;
        } else {
          for (int i = 1; i <= d; ++i) {
            auto& q = pts[idx[i]];
            for (int j = 0; j < d; ++j) q[j] = pts[best][j] + sigma * (q[j] - pts[best][j]);
            vals[idx[i]] = eval(q.data());
          }
        }
      }
      for (int i = 0; i <= d; ++i) record(run, pts[i], vals[i]);
    }
  }

  const OrbitPotential& f_;
  int budget_;
  int evals_ = 0;
};

ComplexVector to_vector(const std::vector<double>& x, int n) {
  ComplexVector v(n);
  for (int k = 0; k < n; ++k) v[k] = Complex(x[k], x[n + k]);
  return v / v.norm();
}

}  // namespace

MinimizeResult minimize_fiducial(const MinimizeConfig& c) {
  validate(c);
  const int n = c.n;
  const OrbitPotential f(n, c.flavor, c.p);
  std::vector<Run> runs(c.restarts);
  auto work = [&](int r) {
    std::seed_seq seq{static_cast<std::uint32_t>(c.seed), static_cast<std::uint32_t>(c.seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss;
    std::vector<double> x0(2 * n);
    double norm = 0;
    do {
      for (auto& x : x0) x = gauss(rng);
      norm = 0;
      for (double x : x0) norm += x * x;
      norm = std::sqrt(norm);
    } while (norm < 1e-3);
    for (auto& x : x0) x /= norm;
    NelderMead nm(f, c.max_iterations);
    runs[r] = nm.minimize(std::move(x0));
  };
  const int workers = std::max(1, std::min(c.jobs, c.restarts));
  if (workers == 1) {
    for (int r = 0; r < c.restarts; ++r) work(r);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int r = w; r < c.restarts; r += workers) work(r);
      });
    for (auto& t : pool) t.join();
  }
  MinimizeResult out;
  int best = 0;
  for (int r = 0; r < c.restarts; ++r) {
    out.restart_values.push_back(runs[r].value);
    if (runs[r].value < runs[best].value) best = r;
  }
  out.best_restart = best;
  out.value = runs[best].value;
  out.history = runs[best].history;
  out.v = to_vector(runs[best].x, n);
  const Configuration orbit = dihedral_orbit(out.v, c.flavor);
  const GramMatrix g = gram(orbit);
  out.angle_spread = angle_spread(g);
  out.coherence = coherence(g);
  out.converged = n >= 1 && is_etf(orbit, c.angle_rel_tol);
  return out;
}

const char* to_string(DiscoverStage s) {
  switch (s) {
    case DiscoverStage::NoConvergence: return "no-convergence";
    case DiscoverStage::RoundingFailure: return "rounding-failure";
    case DiscoverStage::VerificationFailure: return "verification-failure";
  }
  return "unknown";
}

DiscoverResult discover(int n, MinimizeConfig c) {
  if (n < 2 || n % 2) fail(ErrorKind::Unsupported, "n must be even");
  c.n = n;
  c.flavor = DihedralFlavor::Projective;
  DiscoverResult out;
  out.minimization = minimize_fiducial(c);
  if (!out.minimization.converged) {
    out.stage = DiscoverStage::NoConvergence;
    out.detail = "angle spread " + std::to_string(out.minimization.angle_spread);
    return out;
  }
  const GramMatrix g = gram(dihedral_orbit(out.minimization.v, DihedralFlavor::Projective));
  ExtractedPQ pq;
  try {
    pq = extract_PQ(g);
  } catch (const Error& e) {
    out.stage = DiscoverStage::RoundingFailure;
    out.detail = e.what();
    return out;
  }
  Eigen::MatrixXd h(2 * n, 2 * n);
  h << pq.p_approx, pq.q_approx, -pq.q_approx.transpose(), pq.p_approx.transpose();
  ExactifyResult ex;
  try {
    ex = exactify(h);
  } catch (const Error& e) {
    out.stage = DiscoverStage::RoundingFailure;
    out.detail = e.what();
    return out;
  }
  if (!ex.ok()) {
    out.stage = ex.failed == ExactifyCheck::Rounding ? DiscoverStage::RoundingFailure : DiscoverStage::VerificationFailure;
    out.detail = std::string(to_string(ex.failed)) + ": " + ex.detail;
    return out;
  }
  const BlockSkewHadamard& sol = *ex.value;
  const GramMatrix gm = gram_M(sol.matrix());
  if (!is_skew_hadamard(sol.matrix()) || !is_exact_etf_view(*gm.exact()) ||
      max_abs_diff(gm.matrix(), g.matrix()) > 1e-5 || !is_regular(configuration_from_gram(gm, n))) {
    out.stage = DiscoverStage::VerificationFailure;
    out.detail = "exactified matrix does not reproduce the numerical Gram";
    return out;
  }
  SolutionRecord rec;
  rec.n = n;
  rec.a_hex = hex_encode(sol.a());
  rec.b_hex = hex_encode(canonicalize_b(sol.b()));
  rec.type = paley_type(gm, paley_references(n));
  rec.class_id = 0;
  out.record = rec;
  return out;
}

}  // namespace detf
