#include "pathlab/holder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pathlab/grr.hpp"
#include "pathlab/parallel.hpp"
#include "pathlab/rng.hpp"
#include "pathlab/stats.hpp"

namespace pathlab::holder {

namespace {

// Largest k with 2^k dividing n (the dyadic depth of the grid).
int dyadic_depth(std::size_t n) {
  int k = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++k;
  }
  return k;
}

// Every stride-th node, keeping both endpoints; (n-1) must divide evenly.
SamplePath subsample(const SamplePath& path, std::size_t stride) {
  if (stride <= 1) return path;
  if ((path.size() - 1) % stride != 0) {
    throw std::invalid_argument("subsample: stride must divide the grid");
  }
  SamplePath out;
  const std::size_t m = (path.size() - 1) / stride + 1;
  out.grid = uniform_grid(m);
  out.values.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    out.values[i] = path.values[i * stride];
  }
  return out;
}

}  // namespace

ScalingFit fit_scaling(std::span<const double> lags,
                       std::span<const double> m2) {
  if (lags.size() != m2.size() || lags.size() < 5) {
    throw std::invalid_argument("fit_scaling: need >= 5 matched lags");
  }
  ScalingFit fit;
  for (std::size_t i = 0; i < lags.size(); ++i) {
    if (!(lags[i] > 0.0 && lags[i] <= 1.0)) {
      throw std::invalid_argument("fit_scaling: lags must lie in (0, 1]");
    }
    if (!(m2[i] > 0.0)) {
      throw std::invalid_argument(
          "fit_scaling: degenerate (zero-variance) model");
    }
    fit.log_lag.push_back(std::log(lags[i]));
    fit.log_m2.push_back(std::log(m2[i]));
  }
  const LineFit line = fit_line(fit.log_lag, fit.log_m2);
  fit.slope = line.slope;
  fit.slope_stderr = line.slope_stderr;
  fit.alpha_hat = line.slope / 2.0;
  return fit;
}

ScalingFit variance_scaling(const models::PathModel& model,
                            std::span<const int> ks, std::size_t n_paths,
                            std::uint64_t master_seed, unsigned threads) {
  if (n_paths < 1000) {
    throw std::invalid_argument("variance_scaling: need n_paths >= 1000");
  }
  if (ks.size() < 5) {
    throw std::invalid_argument("variance_scaling: need >= 5 dyadic lags");
  }
  const std::size_t n = model.n_points();
  std::vector<std::size_t> steps;
  std::vector<double> lags;
  for (int k : ks) {
    if (k < 1 || k > 30 || (n - 1) % (std::size_t{1} << k) != 0) {
      throw std::invalid_argument(
          "variance_scaling: lag 2^-k must align with the grid");
    }
    steps.push_back((n - 1) >> k);
    lags.push_back(std::ldexp(1.0, -k));
  }

  // Slot-per-path accumulation, reduced in path order afterwards.
  struct Acc {
    double sum = 0.0;
    std::size_t count = 0;
  };
  std::vector<std::vector<Acc>> partial(n_paths,
                                        std::vector<Acc>(steps.size()));
  parallel_for_index(n_paths, threads, [&](std::size_t i) {
    const SamplePath path = model.sample(child_seed(master_seed, i));
    for (std::size_t li = 0; li < steps.size(); ++li) {
      const std::size_t d = steps[li];
      Acc& acc = partial[i][li];
      for (std::size_t s = 0; s + d < n; ++s) {
        const double diff = path.values[s + d] - path.values[s];
        acc.sum += diff * diff;
        ++acc.count;
      }
    }
  });

  std::vector<double> m2(steps.size());
  for (std::size_t li = 0; li < steps.size(); ++li) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n_paths; ++i) {
      sum += partial[i][li].sum;
      count += partial[i][li].count;
    }
    m2[li] = sum / static_cast<double>(count);
  }
  return fit_scaling(lags, m2);
}

double pathwise_exponent(const SamplePath& path) {
  path.validate();
  const std::size_t n = path.size();
  if (n < 1024) {
    throw std::invalid_argument("pathwise_exponent: need N >= 1024");
  }
  const int depth = dyadic_depth(n - 1);
  if (depth < 5) {
    throw std::invalid_argument(
        "pathwise_exponent: grid needs >= 5 dyadic levels (N = 2^m + 1)");
  }
  // Five finest dyadic lags the grid resolves: k = depth-4 .. depth.
  std::vector<double> log_lag, log_osc;
  for (int k = depth - 4; k <= depth; ++k) {
    const std::size_t d = (n - 1) >> k;
    double osc = 0.0;
    for (std::size_t s = 0; s + d < n; ++s) {
      osc = std::max(osc, std::abs(path.values[s + d] - path.values[s]));
    }
    if (osc == 0.0) return std::numeric_limits<double>::infinity();
    log_lag.push_back(-k * std::log(2.0));
    log_osc.push_back(std::log(osc));
  }
  return fit_line(log_lag, log_osc).slope;
}

IffReport iff_report(const models::PathModel& moment_model,
                     const models::PathModel& path_model,
                     const IffConfig& config) {
  if (config.epsilons.empty()) {
    throw std::invalid_argument("iff_report: need at least one epsilon");
  }
  IffReport report;

  // Moment direction.
  report.moment_fit =
      variance_scaling(moment_model, config.moment_ks, config.n_paths_moment,
                       child_seed(config.seed, 0x6d6f6d), config.threads);
  report.alpha_moment = report.moment_fit.alpha_hat;
  report.alpha_reference =
      config.claimed_alpha > 0.0 ? config.claimed_alpha : report.alpha_moment;

  // Path direction: per-seed oscillation exponents on a fine grid.
  const std::uint64_t path_master = child_seed(config.seed, 0x706174);
  report.alpha_path_samples.assign(config.n_seeds_path, 0.0);
  parallel_for_index(config.n_seeds_path, config.threads, [&](std::size_t i) {
    report.alpha_path_samples[i] =
        pathwise_exponent(path_model.sample(child_seed(path_master, i)));
  });
  report.alpha_path_median = median(report.alpha_path_samples);

  // Sobolev constants at the reference alpha on the moment-side ensemble
  // (subsampled; the integrand power 2/epsilon makes full grids expensive).
  const double alpha_ref = report.alpha_reference;
  const std::uint64_t sob_master = child_seed(config.seed, 0x736f62);
  for (double eps : config.epsilons) {
    EpsilonCheck check;
    check.epsilon = eps;
    if (!((alpha_ref - eps / 2.0) * (2.0 / eps) > 1.0)) {
      // gamma*q <= 1: this epsilon is inadmissible at the reference alpha.
      report.epsilon_checks.push_back(check);
      continue;
    }
    std::vector<double> c_eps(config.n_paths_moment);
    std::vector<std::size_t> violations(config.n_paths_moment);
    parallel_for_index(config.n_paths_moment, config.threads,
                       [&](std::size_t i) {
                         const SamplePath path = subsample(
                             moment_model.sample(child_seed(sob_master, i)),
                             config.sobolev_stride);
                         const grr::SobolevResult res =
                             grr::sobolev_bound(path, alpha_ref, eps);
                         c_eps[i] = res.c_epsilon;
                         violations[i] = res.check.violations;
                       });
    check.paths = config.n_paths_moment;
    for (std::size_t i = 0; i < config.n_paths_moment; ++i) {
      check.violations += violations[i];
      check.mean_c_eps += c_eps[i];
      check.max_c_eps = std::max(check.max_c_eps, c_eps[i]);
    }
    check.mean_c_eps /= static_cast<double>(config.n_paths_moment);
    report.epsilon_checks.push_back(check);
  }

  report.moment_ok =
      std::abs(report.alpha_moment - report.alpha_reference) <= config.tolerance;
  report.path_ok = std::abs(report.alpha_path_median - report.alpha_reference) <=
                   config.tolerance;
  report.directions_agree =
      std::abs(report.alpha_moment - report.alpha_path_median) <=
      config.tolerance;
  report.pass = report.moment_ok && report.path_ok && report.directions_agree;
  return report;
}

IffReport iff_report(const models::ModelSpec& spec, const IffConfig& config) {
  return iff_report(models::PathModel(spec, config.n_points_moment),
                    models::PathModel(spec, config.n_points_path), config);
}

ExpMomentReport exp_moment_check(std::span<const double> c_eps_samples,
                                 double beta, double iota) {
  if (c_eps_samples.size() < 1000) {
    throw std::invalid_argument("exp_moment_check: need >= 1000 samples");
  }
  if (!(beta > 0.0 && iota > 0.0)) {
    throw std::invalid_argument("exp_moment_check: beta, iota must be > 0");
  }
  ExpMomentReport report;
  std::vector<double> transformed(c_eps_samples.size());
  for (std::size_t i = 0; i < c_eps_samples.size(); ++i) {
    const double c = c_eps_samples[i];
    if (!(c >= 0.0)) {
      throw std::invalid_argument("exp_moment_check: samples must be >= 0");
    }
    const double exponent = beta * std::pow(c, 1.0 / iota);
    if (exponent > 700.0) {
      report.beta_too_large = true;
      report.estimate = std::numeric_limits<double>::infinity();
      return report;
    }
    transformed[i] = std::exp(exponent);
  }
  report.estimate = mean(transformed);
  report.half_estimate = mean(
      std::span<const double>(transformed.data(), transformed.size() / 2));
  report.rel_change =
      std::abs(report.estimate - report.half_estimate) / report.estimate;

  std::vector<double> sorted(transformed);
  std::sort(sorted.begin(), sorted.end());
  const std::size_t drop = std::max<std::size_t>(1, sorted.size() / 100);
  report.trimmed = mean(
      std::span<const double>(sorted.data(), sorted.size() - drop));
  report.trim_ratio = std::abs(report.trimmed - report.estimate) / report.estimate;

  report.stable = !report.beta_too_large && report.rel_change < 0.10 &&
                  report.trim_ratio <= 0.25;
  return report;
}

}  // namespace pathlab::holder
