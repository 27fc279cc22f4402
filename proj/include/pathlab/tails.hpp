#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pathlab/models.hpp"
#include "pathlab/types.hpp"

namespace pathlab::tails {

// Admissible supremum-tail decay rates: beta0 must stay below
// e*iota / (8^n_dims * c0 * 3^max(iota-1,0))^(1/iota).
double beta0_max(double c0, double iota, int n_dims = 1);

struct CBeta0Estimate {
  double value = 0.0;  // 4^n * mean(B^kappa)
  double kappa = 0.0;  // beta0/beta * (8^n * 3^max(iota-1,0))^(1/iota)
  // kappa below the B-moment window e*iota/(beta c0^(1/iota)); always true
  // when no c0 is supplied (the check needs one).
  bool kappa_in_window = true;
};

// Plug-in estimate of the tail prefactor C(beta0) from B samples drawn on
// independent paths.  Passing c0 > 0 enables the moment-window warning.
CBeta0Estimate estimate_C_beta0(std::span<const double> b_samples,
                                double beta0, double beta, double iota,
                                int n_dims = 1, double c0 = 0.0);

struct TailExperimentConfig {
  double alpha = 0.5;
  double beta = 0.5;
  double beta0 = 0.1;
  double iota = 0.5;
  double c0 = 0.0;          // > 0 turns on window validation
  double path_scale = 1.0;  // scales sampled paths before analysis
  unsigned threads = 0;
};

struct TailCurve {
  std::vector<double> u;
  std::vector<double> empirical;
  std::vector<double> bound;
  std::vector<int> pass;  // per-u verdict: empirical <= bound + 4 binomial SE
  bool all_pass = false;
  std::size_t n_paths = 0;

  // Constants realized by the experiment, for the report sidecar.
  double c_beta0 = 0.0;
  double kappa = 0.0;
  double c_d = 0.0;
  double additive_const = 0.0;         // C_d e^-iota (iota/alpha)^iota (used)
  double additive_const_stated = 0.0;  // C_d e^-(alpha iota) iota^iota (comparison)
  double b_mean = 0.0;
  double interval_lo = 0.0, interval_hi = 1.0, base_point = 0.0;
};

// Monte Carlo check of the supremum tail bound
//   P(sup_{t in I} |X_t - X_s| >= u |I|^alpha + additive)
//     <= C(beta0) exp(-beta0 u^(1/iota))
// over the given u grid.  I = [interval_lo, interval_hi] and the base point
// must be grid-aligned; the sup is taken over grid nodes of I.
TailCurve sup_tail_experiment(const models::PathModel& model,
                              double interval_lo, double interval_hi,
                              double base_point, std::span<const double> u_grid,
                              std::size_t n_paths,
                              const TailExperimentConfig& config,
                              std::uint64_t master_seed);

// (1 - theta)^2 mean^2 / second_moment, the lower tail bound
// P(X > theta E X) for nonnegative X.
double paley_zygmund(double mean, double second_moment, double theta);

struct TightnessRow {
  double lag = 0.0;
  std::size_t samples = 0;
  double m2 = 0.0;        // pooled E F^2 at this lag
  double ratio = 0.0;     // E F^4 / (E F^2)^2
  double ratio_se = 0.0;  // delta-method standard error of the ratio
};

struct TightnessReport {
  std::vector<TightnessRow> rows;
  double sup_m2 = 0.0;
  double max_ratio = 0.0;
  bool ratio_bounded = true;  // every ratio finite
  bool degenerate = false;    // some lag had zero second moment
};

// Moment diagnostics of F = |X_t - X_s| / |t-s|^(alpha-epsilon) pooled over
// non-overlapping increments: per-lag second moments and fourth-moment
// ratios (the uniform-ratio premise), with delta-method errors.
TightnessReport tightness_diagnostic(const models::PathModel& model,
                                     double alpha, double epsilon,
                                     std::span<const std::size_t> lag_steps,
                                     std::size_t n_paths,
                                     std::uint64_t master_seed,
                                     unsigned threads = 0);

}  // namespace pathlab::tails
