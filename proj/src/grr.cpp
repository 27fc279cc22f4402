#include "pathlab/grr.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace pathlab::grr {

namespace {

constexpr double kEuler = 2.718281828459045235360287471353;

// x^(1/iota) with fast paths for the two exponents that dominate practical
// runs (iota = 1/2 and iota = 1); the generic pow costs ~5x.
struct PowInvIota {
  double inv_iota;
  bool is_square;
  bool is_identity;

  explicit PowInvIota(double iota)
      : inv_iota(1.0 / iota),
        is_square(std::abs(inv_iota - 2.0) < 1e-14),
        is_identity(std::abs(inv_iota - 1.0) < 1e-14) {}

  double operator()(double x) const {
    if (is_square) return x * x;
    if (is_identity) return x;
    return std::pow(x, inv_iota);
  }
};

void check_shape(double beta, double iota) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
  if (!(iota > 0.0)) throw std::invalid_argument("iota must be > 0");
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1]");
  }
}

}  // namespace

double beta_max(double c0, double iota) {
  if (!(c0 > 0.0)) throw std::invalid_argument("beta_max: c0 must be > 0");
  if (!(iota > 0.0)) throw std::invalid_argument("beta_max: iota must be > 0");
  return kEuler * iota / std::pow(c0, 1.0 / iota);
}

void validate_config(const GrrConfig& config, double c0) {
  check_shape(config.beta, config.iota);
  check_alpha(config.alpha);
  if (c0 > 0.0 && config.beta >= beta_max(c0, config.iota)) {
    throw std::invalid_argument(
        "beta outside the exponential-moment window (0, e*iota/c0^(1/iota))");
  }
}

double psi(double x, double beta, double iota) {
  check_shape(beta, iota);
  if (!(x >= 0.0)) throw std::invalid_argument("psi: x must be >= 0");
  return std::exp(beta * std::pow(x, 1.0 / iota));
}

double psi_inv(double y, double beta, double iota) {
  check_shape(beta, iota);
  if (!(y >= 1.0)) throw std::invalid_argument("psi_inv: y must be >= 1");
  return std::pow(std::log(y) / beta, iota);
}

BEstimate compute_B(const SamplePath& path, double alpha, double beta,
                    double iota) {
  path.validate();
  check_shape(beta, iota);
  check_alpha(alpha);
  const std::size_t n = path.size();
  if (n < 16) throw std::invalid_argument("compute_B: need >= 16 grid points");

  const double h = path.step();
  const PowInvIota pow_inv(iota);
  // rho(lag)^(-1) per distinct lag; lag d means |t-s| = d*h.
  std::vector<double> inv_rho(n);
  for (std::size_t d = 1; d < n; ++d) {
    inv_rho[d] = 1.0 / std::pow(static_cast<double>(d) * h, alpha);
  }

  double off_diag = 0.0;
  const double* x = path.values.data();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double ratio = std::abs(x[j] - x[i]) * inv_rho[j - i];
      const double exponent = beta * pow_inv(ratio);
      if (exponent > 709.0) {
        throw NumericalError(
            "compute_B: integrand overflow at pair (" + std::to_string(i) +
            ", " + std::to_string(j) + "); beta too large for this path");
      }
      off_diag += std::exp(exponent);
    }
  }
  const double cells = static_cast<double>(n) * static_cast<double>(n);
  BEstimate est;
  est.diagonal_mass = static_cast<double>(n) / cells;
  est.value = est.diagonal_mass + 2.0 * off_diag / cells;
  return est;
}

double modulus_bound(double delta, double B, double beta, double iota,
                     double alpha, const QuadratureOptions& quad) {
  check_shape(beta, iota);
  check_alpha(alpha);
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("modulus_bound: delta must lie in (0, 1]");
  }
  const double b_floor = std::max(B, 0.25 + 1e-12);
  const double log4b = std::log(4.0 * b_floor);
  const double integral =
      weighted_log_power_integral(delta, alpha, iota, log4b, 2.0, quad).value;
  return 8.0 * std::pow(beta, -iota) * alpha * integral;
}

HolderConstants holder_constants(double B, double beta, double iota,
                                 double alpha, const QuadratureOptions& quad) {
  check_shape(beta, iota);
  check_alpha(alpha);
  const double three_pow = std::pow(3.0, std::max(iota - 1.0, 0.0));
  const double beta_pow = std::pow(beta, -iota);

  HolderConstants hc;
  const double log_term = std::log(std::max(4.0 * B, 1.0));
  hc.c_omega = 8.0 * three_pow * beta_pow * std::pow(log_term, iota);
  hc.v_integral =
      weighted_log_power_integral(1.0, alpha, iota, 0.0, 1.0, quad).value;
  hc.c_d = 8.0 * alpha * std::pow(2.0, iota) * three_pow * beta_pow *
           (1.0 / alpha + hc.v_integral);
  return hc;
}

ViolationReport verify_modulus(const SamplePath& path, double c_omega,
                               double c_d, double alpha, double iota) {
  path.validate();
  check_alpha(alpha);
  if (!(iota > 0.0)) throw std::invalid_argument("iota must be > 0");
  const std::size_t n = path.size();
  const double h = path.step();

  ViolationReport report;
  report.worst_margin = std::numeric_limits<double>::infinity();
  const double* x = path.values.data();
  // Lags run to n-2 steps: the pair at |t-s| = 1 is excluded (log 1/|t-s|
  // vanishes and the statement is for gaps < 1).
  for (std::size_t d = 1; d + 1 < n; ++d) {
    const double lag = static_cast<double>(d) * h;
    const double bound =
        c_omega * std::pow(lag, alpha) +
        c_d * std::pow(lag, alpha) * std::pow(std::log(1.0 / lag), iota);
    double worst = 0.0;
    for (std::size_t i = 0; i + d < n; ++i) {
      const double observed = std::abs(x[i + d] - x[i]);
      if (observed > bound) ++report.violations;
      if (observed > worst) worst = observed;
    }
    report.pairs_checked += n - d;
    report.worst_margin = std::min(report.worst_margin, bound - worst);
  }
  return report;
}

GrrResult analyze(const SamplePath& path, const GrrConfig& config,
                  int dyadic_levels) {
  validate_config(config);
  const BEstimate b = compute_B(path, config.alpha, config.beta, config.iota);
  const HolderConstants hc =
      holder_constants(b.value, config.beta, config.iota, config.alpha,
                       config.quad);
  GrrResult result;
  result.B = b.value;
  result.diagonal_mass = b.diagonal_mass;
  result.c_omega = hc.c_omega;
  result.c_d = hc.c_d;
  result.v_integral = hc.v_integral;
  double delta = 1.0;
  for (int k = 0; k <= dyadic_levels; ++k) {
    result.modulus_samples.emplace_back(
        delta, modulus_bound(delta, b.value, config.beta, config.iota,
                             config.alpha, config.quad));
    delta *= 0.5;
  }
  return result;
}

SobolevResult sobolev_bound(const SamplePath& path, double alpha,
                            double epsilon) {
  path.validate();
  check_alpha(alpha);
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("sobolev_bound: epsilon must lie in (0, 1]");
  }
  SobolevResult res;
  res.q = 2.0 / epsilon;
  res.gamma = alpha - epsilon / 2.0;
  if (!(res.gamma * res.q > 1.0)) {
    throw std::invalid_argument(
        "sobolev_bound: need gamma*q > 1 (epsilon too large for alpha)");
  }

  const std::size_t n = path.size();
  const double h = path.step();
  const double* x = path.values.data();
  // Discrete \int\int (|X_u - X_v| / |u-v|^alpha)^q du dv; the sub-grid
  // diagonal band contributes its exact limit 0.
  std::vector<double> inv_rho(n);
  for (std::size_t d = 1; d < n; ++d) {
    inv_rho[d] = 1.0 / std::pow(static_cast<double>(d) * h, alpha);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      sum += std::pow(std::abs(x[j] - x[i]) * inv_rho[j - i], res.q);
    }
  }
  res.integral = 2.0 * sum / (static_cast<double>(n) * static_cast<double>(n));

  const double c_gq =
      8.0 * std::pow(4.0, 1.0 / res.q) * (res.gamma + 1.0 / res.q) /
      (res.gamma - 1.0 / res.q);
  res.c_epsilon = c_gq * std::pow(res.integral, 1.0 / res.q);

  // Pathwise check of |X_t - X_s| <= C_eps |t-s|^(alpha - epsilon).
  res.check.worst_margin = std::numeric_limits<double>::infinity();
  const double exp_holder = alpha - epsilon;
  for (std::size_t d = 1; d < n; ++d) {
    const double bound =
        res.c_epsilon * std::pow(static_cast<double>(d) * h, exp_holder);
    double worst = 0.0;
    for (std::size_t i = 0; i + d < n; ++i) {
      const double observed = std::abs(x[i + d] - x[i]);
      if (observed > bound) ++res.check.violations;
      if (observed > worst) worst = observed;
    }
    res.check.pairs_checked += n - d;
    res.check.worst_margin = std::min(res.check.worst_margin, bound - worst);
  }
  return res;
}

double limsup_ratio(const SamplePath& path, double alpha, double iota,
                    std::size_t max_lag_steps) {
  path.validate();
  check_alpha(alpha);
  if (!(iota > 0.0)) throw std::invalid_argument("iota must be > 0");
  const std::size_t n = path.size();
  const double h = path.step();
  const double* x = path.values.data();
  double max_ratio = 0.0;
  for (std::size_t d = 1; d <= max_lag_steps && d < n; ++d) {
    const double lag = static_cast<double>(d) * h;
    if (lag >= 1.0) break;
    const double denom =
        std::pow(lag, alpha) * std::pow(std::log(1.0 / lag), iota);
    for (std::size_t i = 0; i + d < n; ++i) {
      max_ratio = std::max(max_ratio, std::abs(x[i + d] - x[i]) / denom);
    }
  }
  return max_ratio;
}

}  // namespace pathlab::grr
