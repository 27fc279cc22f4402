#include "pathlab/tails.hpp"

#include <cmath>
#include <limits>

#include "pathlab/grr.hpp"
#include "pathlab/parallel.hpp"
#include "pathlab/rng.hpp"
#include "pathlab/stats.hpp"

namespace pathlab::tails {

namespace {

constexpr double kEuler = 2.718281828459045235360287471353;

std::size_t aligned_index(double point, std::size_t n_points,
                          const char* what) {
  const double scaled = point * static_cast<double>(n_points - 1);
  const double rounded = std::round(scaled);
  if (std::abs(scaled - rounded) > 1e-9 || rounded < 0.0 ||
      rounded > static_cast<double>(n_points - 1)) {
    throw std::invalid_argument(std::string(what) +
                                " is not aligned to the sample grid");
  }
  return static_cast<std::size_t>(rounded);
}

}  // namespace

double beta0_max(double c0, double iota, int n_dims) {
  if (!(c0 > 0.0)) throw std::invalid_argument("beta0_max: c0 must be > 0");
  if (!(iota > 0.0)) throw std::invalid_argument("beta0_max: iota must be > 0");
  if (n_dims < 1) throw std::invalid_argument("beta0_max: n_dims must be >= 1");
  const double base = std::pow(8.0, n_dims) * c0 *
                      std::pow(3.0, std::max(iota - 1.0, 0.0));
  return kEuler * iota / std::pow(base, 1.0 / iota);
}

CBeta0Estimate estimate_C_beta0(std::span<const double> b_samples,
                                double beta0, double beta, double iota,
                                int n_dims, double c0) {
  if (b_samples.empty()) {
    throw std::invalid_argument("estimate_C_beta0: no B samples");
  }
  if (!(beta0 > 0.0 && beta > 0.0 && iota > 0.0)) {
    throw std::invalid_argument("estimate_C_beta0: rates must be > 0");
  }
  if (n_dims < 1) throw std::invalid_argument("estimate_C_beta0: n_dims >= 1");
  if (c0 > 0.0 && beta0 >= beta0_max(c0, iota, n_dims)) {
    throw std::invalid_argument("estimate_C_beta0: beta0 above beta0_max");
  }

  CBeta0Estimate est;
  est.kappa = beta0 / beta *
              std::pow(std::pow(8.0, n_dims) *
                           std::pow(3.0, std::max(iota - 1.0, 0.0)),
                       1.0 / iota);
  if (c0 > 0.0) {
    est.kappa_in_window = est.kappa < kEuler * iota / (beta * std::pow(c0, 1.0 / iota));
  }
  double acc = 0.0;
  for (double b : b_samples) {
    if (!(b > 0.0)) throw std::invalid_argument("estimate_C_beta0: B must be > 0");
    acc += std::pow(b, est.kappa);
  }
  est.value = std::pow(4.0, n_dims) * acc / static_cast<double>(b_samples.size());
  return est;
}

TailCurve sup_tail_experiment(const models::PathModel& model,
                              double interval_lo, double interval_hi,
                              double base_point, std::span<const double> u_grid,
                              std::size_t n_paths,
                              const TailExperimentConfig& config,
                              std::uint64_t master_seed) {
  if (n_paths < 1000) {
    throw std::invalid_argument("sup_tail_experiment: need n_paths >= 1000");
  }
  if (u_grid.empty()) {
    throw std::invalid_argument("sup_tail_experiment: empty u grid");
  }
  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    if (!(u_grid[i] > 0.0) || (i > 0 && u_grid[i] <= u_grid[i - 1])) {
      throw std::invalid_argument(
          "sup_tail_experiment: u grid must be positive and increasing");
    }
  }
  if (!(interval_lo >= 0.0 && interval_lo < interval_hi && interval_hi <= 1.0)) {
    throw std::invalid_argument("sup_tail_experiment: bad interval");
  }
  if (!(base_point >= interval_lo && base_point <= interval_hi)) {
    throw std::invalid_argument("sup_tail_experiment: base point outside I");
  }
  if (!(config.path_scale > 0.0)) {
    throw std::invalid_argument("sup_tail_experiment: path_scale must be > 0");
  }
  grr::GrrConfig grr_cfg{config.beta, config.iota, config.alpha, {}};
  grr::validate_config(grr_cfg, config.c0);
  if (config.c0 > 0.0 &&
      config.beta0 >= beta0_max(config.c0, config.iota, 1)) {
    throw std::invalid_argument("sup_tail_experiment: beta0 above beta0_max");
  }

  const std::size_t n = model.n_points();
  const std::size_t lo_i = aligned_index(interval_lo, n, "interval_lo");
  const std::size_t hi_i = aligned_index(interval_hi, n, "interval_hi");
  const std::size_t base_i = aligned_index(base_point, n, "base_point");

  std::vector<double> sups(n_paths), bs(n_paths);
  parallel_for_index(n_paths, config.threads, [&](std::size_t i) {
    SamplePath path = model.sample(child_seed(master_seed, i));
    if (config.path_scale != 1.0) {
      for (double& v : path.values) v *= config.path_scale;
    }
    const double at_base = path.values[base_i];
    double sup = 0.0;
    for (std::size_t t = lo_i; t <= hi_i; ++t) {
      sup = std::max(sup, std::abs(path.values[t] - at_base));
    }
    sups[i] = sup;
    bs[i] = grr::compute_B(path, config.alpha, config.beta, config.iota).value;
  });

  const CBeta0Estimate c_est = estimate_C_beta0(
      bs, config.beta0, config.beta, config.iota, 1, config.c0);
  const grr::HolderConstants hc =
      grr::holder_constants(1.0, config.beta, config.iota, config.alpha);

  TailCurve curve;
  curve.n_paths = n_paths;
  curve.c_beta0 = c_est.value;
  curve.kappa = c_est.kappa;
  curve.c_d = hc.c_d;
  curve.additive_const =
      hc.c_d * std::exp(-config.iota) *
      std::pow(config.iota / config.alpha, config.iota);
  curve.additive_const_stated = hc.c_d *
                                std::exp(-config.alpha * config.iota) *
                                std::pow(config.iota, config.iota);
  curve.b_mean = mean(bs);
  curve.interval_lo = interval_lo;
  curve.interval_hi = interval_hi;
  curve.base_point = base_point;

  const double len_pow = std::pow(interval_hi - interval_lo, config.alpha);
  const auto n_d = static_cast<double>(n_paths);
  curve.all_pass = true;
  for (double u : u_grid) {
    const double threshold = u * len_pow + curve.additive_const;
    std::size_t exceed = 0;
    for (double s : sups) {
      if (s >= threshold) ++exceed;
    }
    const double emp = static_cast<double>(exceed) / n_d;
    const double bound =
        c_est.value * std::exp(-config.beta0 * std::pow(u, 1.0 / config.iota));
    const double se = std::sqrt(emp * (1.0 - emp) / n_d);
    const bool ok = emp <= bound + 4.0 * se;
    curve.u.push_back(u);
    curve.empirical.push_back(emp);
    curve.bound.push_back(bound);
    curve.pass.push_back(ok ? 1 : 0);
    curve.all_pass = curve.all_pass && ok;
  }
  return curve;
}

double paley_zygmund(double mean, double second_moment, double theta) {
  if (!(mean >= 0.0)) throw std::invalid_argument("paley_zygmund: mean >= 0");
  if (!(second_moment > 0.0)) {
    throw std::invalid_argument("paley_zygmund: second moment must be > 0");
  }
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("paley_zygmund: theta must lie in [0, 1]");
  }
  if (mean * mean > second_moment * (1.0 + 1e-12)) {
    throw std::invalid_argument(
        "paley_zygmund: mean^2 > second moment violates Cauchy-Schwarz");
  }
  return (1.0 - theta) * (1.0 - theta) * mean * mean / second_moment;
}

TightnessReport tightness_diagnostic(const models::PathModel& model,
                                     double alpha, double epsilon,
                                     std::span<const std::size_t> lag_steps,
                                     std::size_t n_paths,
                                     std::uint64_t master_seed,
                                     unsigned threads) {
  if (lag_steps.empty()) {
    throw std::invalid_argument("tightness_diagnostic: no lags");
  }
  if (n_paths < 2) throw std::invalid_argument("tightness_diagnostic: n_paths");
  if (!(alpha > 0.0 && alpha <= 1.0) || !(epsilon > 0.0 && epsilon < alpha)) {
    throw std::invalid_argument(
        "tightness_diagnostic: need 0 < epsilon < alpha <= 1");
  }
  const std::size_t n = model.n_points();
  for (std::size_t d : lag_steps) {
    if (d == 0 || d >= n) {
      throw std::invalid_argument("tightness_diagnostic: lag out of range");
    }
  }

  const std::size_t n_lags = lag_steps.size();
  // Per-path, per-lag accumulators of F^2, F^4, F^6, F^8 and counts; the
  // reduction after the parallel section runs in path order.
  struct Acc {
    double m2 = 0, m4 = 0, m6 = 0, m8 = 0;
    std::size_t count = 0;
  };
  std::vector<std::vector<Acc>> partial(n_paths, std::vector<Acc>(n_lags));
  const double h = 1.0 / static_cast<double>(n - 1);

  parallel_for_index(n_paths, threads, [&](std::size_t i) {
    const SamplePath path = model.sample(child_seed(master_seed, i));
    for (std::size_t li = 0; li < n_lags; ++li) {
      const std::size_t d = lag_steps[li];
      const double scale =
          std::pow(static_cast<double>(d) * h, alpha - epsilon);
      Acc& acc = partial[i][li];
      // Non-overlapping increments keep the pooled samples independent for
      // models with independent increments, so the delta-method SE is honest.
      for (std::size_t s = 0; s + d < n; s += d) {
        const double f = std::abs(path.values[s + d] - path.values[s]) / scale;
        const double f2 = f * f;
        acc.m2 += f2;
        acc.m4 += f2 * f2;
        acc.m6 += f2 * f2 * f2;
        acc.m8 += f2 * f2 * f2 * f2;
        ++acc.count;
      }
    }
  });

  TightnessReport report;
  for (std::size_t li = 0; li < n_lags; ++li) {
    Acc total;
    for (std::size_t i = 0; i < n_paths; ++i) {
      total.m2 += partial[i][li].m2;
      total.m4 += partial[i][li].m4;
      total.m6 += partial[i][li].m6;
      total.m8 += partial[i][li].m8;
      total.count += partial[i][li].count;
    }
    const auto cnt = static_cast<double>(total.count);
    TightnessRow row;
    row.lag = static_cast<double>(lag_steps[li]) * h;
    row.samples = total.count;
    row.m2 = total.m2 / cnt;
    const double m4 = total.m4 / cnt;
    const double m6 = total.m6 / cnt;
    const double m8 = total.m8 / cnt;
    if (row.m2 > 0.0) {
      row.ratio = m4 / (row.m2 * row.m2);
      // Delta method for m4/m2^2 with a = F^2: gradient (1/m2^2, -2 m4/m2^3).
      const double var_a = m4 - row.m2 * row.m2;
      const double var_a2 = m8 - m4 * m4;
      const double cov = m6 - m4 * row.m2;
      const double m2_2 = row.m2 * row.m2;
      double v = var_a2 / (m2_2 * m2_2) -
                 4.0 * m4 * cov / (m2_2 * m2_2 * row.m2) +
                 4.0 * m4 * m4 * var_a / (m2_2 * m2_2 * m2_2);
      v = std::max(v, 0.0) / cnt;
      row.ratio_se = std::sqrt(v);
    } else {
      report.degenerate = true;
    }
    report.sup_m2 = std::max(report.sup_m2, row.m2);
    report.max_ratio = std::max(report.max_ratio, row.ratio);
    if (!std::isfinite(row.ratio)) report.ratio_bounded = false;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace pathlab::tails
