#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pathlab/types.hpp"

namespace pathlab::moments {

// Moment-growth parameters of Assumption-style bounds C(p) <= C0^p p^(p*iota).
struct HyperParams {
  double c0 = 1.0;
  double iota = 0.5;
};

struct HyperFit {
  HyperParams params;
  double residual_rms = 0.0;      // RMS of log-space residuals
  double max_abs_residual = 0.0;  // worst log-space residual
  double r_squared = 0.0;         // about the centered log-ratio values
};

// E|Z|^p for standard normal Z: (2^(p/2)/sqrt(pi)) Gamma((p+1)/2), p > -1.
double gaussian_abs_moment(double p);

// Hypercontractive norm-comparison factor for a fixed chaos of the given
// order: ||F||_r <= ((r-1)/(q-1))^(order/2) ||F||_q for r >= q > 1.
double chaos_moment_comparison(double q, double r, int chaos_order);

// mean(|x|^p) / mean(x^2)^(p/2) over the sample.
double empirical_moment_ratio(std::span<const double> samples, double p);

// Least-squares fit of log C(p) = p log c0 + iota * p log p over the design
// {(p, p log p)}.  Needs >= 4 distinct p values and positive ratios.
HyperFit fit_hyper_params(std::span<const std::pair<double, double>> ratios);

// Parameters of the product XY of independent factors:
// c0 = 2^(iota_x + iota_y) c0_x c0_y, iota = iota_x + iota_y.
HyperParams combine_product_params(const HyperParams& x, const HyperParams& y);

}  // namespace pathlab::moments
