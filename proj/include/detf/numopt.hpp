#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "detf/frames.hpp"
#include "detf/search.hpp"

namespace detf {

struct MinimizeConfig {
  int n = 2;
  double p = 4;
  int restarts = 10;
  int max_iterations = 200000;  // objective evaluations per restart
  double angle_rel_tol = 1e-7;
  std::uint64_t seed = 1;
  DihedralFlavor flavor = DihedralFlavor::Projective;  // Strict is the diagnostic mode
  int jobs = 1;
};

void validate(const MinimizeConfig& c);

// Frame potential of the dihedral orbit of v/|v| from the first rows of its blocks:
// F_p = 2n (sum_m |A_0m|^p + sum_m |B_0m|^p).
class OrbitPotential {
 public:
  OrbitPotential(int n, DihedralFlavor flavor, double p);

  double operator()(const ComplexVector& v) const;
  // Same, on the 2n real parameters (real parts then imaginary parts).
  double operator()(const double* x) const;

  int n() const noexcept { return n_; }

 private:
  int n_;
  DihedralFlavor flavor_;
  double p_;
  std::vector<double> w_re_, w_im_;
  std::vector<int> partner_;
};

struct MinimizeResult {
  ComplexVector v;
  double value = 0;
  bool converged = false;
  double angle_spread = 0;
  double coherence = 0;
  int best_restart = 0;
  std::vector<double> restart_values;
  // Best value after each improvement of the winning restart, non-increasing.
  std::vector<double> history;
};

MinimizeResult minimize_fiducial(const MinimizeConfig& c);

enum class DiscoverStage { NoConvergence, RoundingFailure, VerificationFailure };
const char* to_string(DiscoverStage s);

struct DiscoverResult {
  std::optional<SolutionRecord> record;
  DiscoverStage stage = DiscoverStage::NoConvergence;
  std::string detail;
  MinimizeResult minimization;

  bool ok() const { return record.has_value(); }
};

DiscoverResult discover(int n, MinimizeConfig c);

}  // namespace detf
