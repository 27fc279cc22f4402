#include "pathlab/moments.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <set>

namespace pathlab::moments {

double gaussian_abs_moment(double p) {
  if (!(p > -1.0)) {
    throw std::invalid_argument("gaussian_abs_moment: need p > -1");
  }
  return std::pow(2.0, p / 2.0) / std::sqrt(std::numbers::pi) *
         std::tgamma((p + 1.0) / 2.0);
}

double chaos_moment_comparison(double q, double r, int chaos_order) {
  if (chaos_order < 1) throw std::invalid_argument("chaos order must be >= 1");
  if (!(r >= q && q > 1.0)) {
    throw std::invalid_argument("chaos_moment_comparison: need r >= q > 1");
  }
  return std::pow((r - 1.0) / (q - 1.0), static_cast<double>(chaos_order) / 2.0);
}

double empirical_moment_ratio(std::span<const double> samples, double p) {
  if (samples.size() < 2) {
    throw std::invalid_argument("empirical_moment_ratio: need >= 2 samples");
  }
  if (!(p > 0.0)) throw std::invalid_argument("empirical_moment_ratio: p > 0");
  double abs_p = 0.0, sq = 0.0;
  for (double x : samples) {
    abs_p += std::pow(std::abs(x), p);
    sq += x * x;
  }
  const auto n = static_cast<double>(samples.size());
  abs_p /= n;
  sq /= n;
  if (!(sq > 0.0)) {
    throw std::invalid_argument("empirical_moment_ratio: degenerate sample");
  }
  return abs_p / std::pow(sq, p / 2.0);
}

HyperFit fit_hyper_params(std::span<const std::pair<double, double>> ratios) {
  std::set<double> distinct;
  for (const auto& [p, c] : ratios) {
    if (!(p > 0.0)) throw std::invalid_argument("fit_hyper_params: p must be > 0");
    if (!(c > 0.0)) {
      throw std::invalid_argument("fit_hyper_params: ratios must be positive");
    }
    distinct.insert(p);
  }
  if (distinct.size() < 4) {
    throw std::invalid_argument("fit_hyper_params: need >= 4 distinct p values");
  }

  const auto n = static_cast<Eigen::Index>(ratios.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double p = ratios[static_cast<std::size_t>(i)].first;
    design(i, 0) = p;
    design(i, 1) = p * std::log(p);
    y(i) = std::log(ratios[static_cast<std::size_t>(i)].second);
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < 2) {
    throw std::invalid_argument(
        "fit_hyper_params: singular design (p and p log p collinear)");
  }
  const Eigen::VectorXd coef = qr.solve(y);

  HyperFit fit;
  fit.params.c0 = std::exp(coef(0));
  fit.params.iota = coef(1);
  const Eigen::VectorXd resid = y - design * coef;
  fit.residual_rms = std::sqrt(resid.squaredNorm() / static_cast<double>(n));
  fit.max_abs_residual = resid.cwiseAbs().maxCoeff();
  const double tss = (y.array() - y.mean()).square().sum();
  fit.r_squared = tss > 0.0 ? 1.0 - resid.squaredNorm() / tss : 1.0;
  return fit;
}

HyperParams combine_product_params(const HyperParams& x, const HyperParams& y) {
  if (!(x.c0 > 0.0 && y.c0 > 0.0 && x.iota > 0.0 && y.iota > 0.0)) {
    throw std::invalid_argument("combine_product_params: invalid inputs");
  }
  HyperParams out;
  out.iota = x.iota + y.iota;
  out.c0 = std::pow(2.0, x.iota + y.iota) * x.c0 * y.c0;
  return out;
}

}  // namespace pathlab::moments
