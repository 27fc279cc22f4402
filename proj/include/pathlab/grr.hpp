#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pathlab/quadrature.hpp"
#include "pathlab/types.hpp"

namespace pathlab::grr {

// Parameters of the one-parameter regularity engine: increments are measured
// against rho(u) = u^alpha, and exponential integrability is taken at shape
// (beta, iota) through Psi(x) = exp(beta x^(1/iota)).
struct GrrConfig {
  double beta = 1.0;
  double iota = 1.0;
  double alpha = 0.5;
  QuadratureOptions quad{};
};

// Largest admissible beta for moment parameters (c0, iota): the exponential
// moment window is beta in (0, e*iota / c0^(1/iota)).
double beta_max(double c0, double iota);

// Throws std::invalid_argument unless beta/iota/alpha are in range; when
// c0 > 0 is supplied, additionally enforces the moment window above.
void validate_config(const GrrConfig& config, double c0 = 0.0);

// Psi and its inverse on [1, inf).
double psi(double x, double beta, double iota);
double psi_inv(double y, double beta, double iota);

struct BEstimate {
  double value = 0.0;
  // Share of the double sum contributed by the sub-grid diagonal band,
  // where the integrand is taken as Psi(0) = 1.
  double diagonal_mass = 0.0;
};

// Discretization of B = \int\int Psi(|X_t - X_s| / |t-s|^alpha) ds dt over
// the unit square, as an N^2-cell midpoint sum.  Always >= 1.  Throws
// NumericalError naming the offending pair if the integrand overflows
// (the signal that beta is too large for this path).
BEstimate compute_B(const SamplePath& path, double alpha, double beta,
                    double iota);

// The modulus-of-continuity bound at gap delta:
//   8 \int_0^delta beta^(-iota) (log(4B/u^2))^iota  d(u^alpha).
// B is floored at 1/4 + 1e-12 so the logarithm stays positive; analytically
// B >= 1, so the floor only guards round-off on degenerate inputs.
double modulus_bound(double delta, double B, double beta, double iota,
                     double alpha, const QuadratureOptions& quad = {});

struct HolderConstants {
  double c_omega = 0.0;   // random (B-dependent) Holder constant
  double c_d = 0.0;       // deterministic companion constant
  double v_integral = 0.0;  // \int_0^1 (-log v)^iota v^(alpha-1) dv
};

// Constants for the pathwise bound
//   |X_t - X_s| <= C(omega)|t-s|^alpha + C_d |t-s|^alpha (log 1/|t-s|)^iota:
//   C(omega) = 8 * 3^max(iota-1,0) * beta^-iota * (log max(4B,1))^iota,
//   C_d      = 8 alpha 2^iota 3^max(iota-1,0) beta^-iota (1/alpha + V).
HolderConstants holder_constants(double B, double beta, double iota,
                                 double alpha,
                                 const QuadratureOptions& quad = {});

// Sweeps all grid pairs with 0 < |t-s| < 1 against the two-term bound above.
// Zero tolerance: a pair violates iff observed > bound in exact float compare.
ViolationReport verify_modulus(const SamplePath& path, double c_omega,
                               double c_d, double alpha, double iota);

// Full per-path analysis: B, the Holder constants, and the modulus bound
// sampled at dyadic gaps delta = 2^-k.
struct GrrResult {
  double B = 0.0;
  double diagonal_mass = 0.0;
  double c_omega = 0.0;
  double c_d = 0.0;
  double v_integral = 0.0;
  std::vector<std::pair<double, double>> modulus_samples;  // (delta, bound)
};
GrrResult analyze(const SamplePath& path, const GrrConfig& config,
                  int dyadic_levels = 10);

// Sobolev-embedding route: with q = 2/epsilon and gamma = alpha - epsilon/2,
//   C_eps(omega) = C_{gamma,q} (\int\int |DX|^q / |u-v|^(alpha q) du dv)^(1/q),
//   C_{gamma,q} = 8 * 4^(1/q) (gamma + 1/q)/(gamma - 1/q),
// and the path obeys |X_t - X_s| <= C_eps(omega) |t-s|^(alpha-epsilon).
struct SobolevResult {
  double c_epsilon = 0.0;
  double q = 0.0;
  double gamma = 0.0;
  double integral = 0.0;  // the discrete double integral before the 1/q power
  ViolationReport check;  // pathwise verification of the displayed bound
};
SobolevResult sobolev_bound(const SamplePath& path, double alpha,
                            double epsilon);

// Max over near-diagonal pairs (|t-s| <= max_lag_steps grid steps) of
//   |X_t - X_s| / (|t-s|^alpha (log 1/|t-s|)^iota),
// the finite-grid stand-in for the limsup statistic, to be compared with c_d.
double limsup_ratio(const SamplePath& path, double alpha, double iota,
                    std::size_t max_lag_steps = 8);

}  // namespace pathlab::grr
