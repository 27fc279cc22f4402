#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pathlab/models.hpp"
#include "pathlab/types.hpp"

namespace pathlab::holder {

struct ScalingFit {
  std::vector<double> log_lag;
  std::vector<double> log_m2;
  double slope = 0.0;
  double slope_stderr = 0.0;
  double alpha_hat = 0.0;  // slope / 2
};

// Core fit shared by the Monte Carlo and analytic routes: least squares of
// log m2 against log lag.  Needs >= 5 lags and positive second moments.
ScalingFit fit_scaling(std::span<const double> lags,
                       std::span<const double> m2);

// Moment direction: pooled second moments of increments at dyadic lags
// 2^-k for k in `ks`, fitted in log-log space; alpha_hat estimates the
// Holder exponent as slope/2.  Lags must divide the grid evenly.
ScalingFit variance_scaling(const models::PathModel& model,
                            std::span<const int> ks, std::size_t n_paths,
                            std::uint64_t master_seed, unsigned threads = 0);

// Path direction: slope of log max-oscillation against log lag over the
// five finest dyadic lags the grid supports.  Needs N >= 1024 with at
// least five dyadic levels dividing N-1.  A path with vanishing fine-scale
// oscillation returns +infinity (the constant-path sentinel).
double pathwise_exponent(const SamplePath& path);

struct EpsilonCheck {
  double epsilon = 0.0;
  std::size_t paths = 0;
  std::size_t violations = 0;  // pathwise Sobolev-bound violations, all paths
  double mean_c_eps = 0.0;
  double max_c_eps = 0.0;
};

struct IffConfig {
  std::vector<double> epsilons{0.05, 0.1, 0.2};
  std::vector<int> moment_ks{3, 4, 5, 6, 7, 8, 9, 10};
  std::size_t n_paths_moment = 1000;
  std::size_t n_points_moment = 1025;
  std::size_t n_seeds_path = 100;
  std::size_t n_points_path = 4097;
  std::size_t sobolev_stride = 2;  // sub-grid stride for the Sobolev sweep
  double claimed_alpha = 0.0;      // 0 = judge against the moment estimate
  double tolerance = 0.1;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

struct IffReport {
  ScalingFit moment_fit;
  double alpha_moment = 0.0;
  double alpha_path_median = 0.0;
  std::vector<double> alpha_path_samples;
  std::vector<EpsilonCheck> epsilon_checks;
  double alpha_reference = 0.0;  // claimed alpha if supplied, else moment
  bool moment_ok = false;        // |alpha_moment - reference| <= tolerance
  bool path_ok = false;          // |alpha_path_median - reference| <= tolerance
  bool directions_agree = false;
  bool pass = false;
};

// Runs both directions of the regularity characterization against one model:
// variance scaling (moment side), per-seed pathwise exponents plus Sobolev
// constants (path side), and their agreement verdict.
IffReport iff_report(const models::ModelSpec& spec, const IffConfig& config);

// Same report from prepared samplers (moment / path grids respectively);
// deterministic PathModel::from_function stubs enter through here.
IffReport iff_report(const models::PathModel& moment_model,
                     const models::PathModel& path_model,
                     const IffConfig& config);

struct ExpMomentReport {
  double estimate = 0.0;       // mean exp(beta c^(1/iota))
  double half_estimate = 0.0;  // same statistic on the first half
  double trimmed = 0.0;        // top-1% trimmed mean
  double rel_change = 0.0;     // |estimate - half| / estimate
  double trim_ratio = 0.0;     // |trimmed - estimate| / estimate
  bool beta_too_large = false;
  bool stable = false;
};

// Stability probe of E exp(beta C^(1/iota)) over >= 1000 samples of the
// Sobolev constant: stable iff the estimate moves < 10% when the sample
// count doubles and the top-1% trimmed mean stays within 25%.  Overflow at
// the given beta is reported, not thrown.
ExpMomentReport exp_moment_check(std::span<const double> c_eps_samples,
                                 double beta, double iota);

}  // namespace pathlab::holder
