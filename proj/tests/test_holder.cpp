#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <vector>

#include "pathlab/holder.hpp"
#include "pathlab/models.hpp"
#include "pathlab/rng.hpp"
#include "test_support.hpp"

using namespace pathlab;
using pathlab::testing::make_path;

TEST_CASE("fit_scaling recovers an exact power law") {
  std::vector<double> lags, m2;
  for (int k = 1; k <= 6; ++k) {
    const double lag = std::ldexp(1.0, -k);
    lags.push_back(lag);
    m2.push_back(std::pow(lag, 1.4));
  }
  const holder::ScalingFit fit = holder::fit_scaling(lags, m2);
  CHECK(fit.slope == doctest::Approx(1.4).epsilon(1e-12));
  CHECK(fit.alpha_hat == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(fit.slope_stderr < 1e-10);
  CHECK(fit.log_lag.size() == 6);

  const std::vector<double> four{0.5, 0.25, 0.125, 0.0625};
  CHECK_THROWS_AS(holder::fit_scaling(four, four), std::invalid_argument);
  std::vector<double> bad_lag = lags;
  bad_lag[0] = 1.5;
  CHECK_THROWS_AS(holder::fit_scaling(bad_lag, m2), std::invalid_argument);
  std::vector<double> degenerate = m2;
  degenerate[2] = 0.0;
  CHECK_THROWS_AS(holder::fit_scaling(lags, degenerate), std::invalid_argument);
}

TEST_CASE("variance scaling is exact on a deterministic linear model") {
  const models::PathModel lin =
      models::PathModel::from_function([](double t) { return t; }, 257);
  const std::vector<int> ks{2, 3, 4, 5, 6};
  const holder::ScalingFit fit = holder::variance_scaling(lin, ks, 1000, 1);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fit.alpha_hat == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("variance scaling recovers the hurst index of fbm") {
  const std::vector<int> ks{2, 3, 4, 5, 6};
  for (const double hurst : {0.3, 0.7}) {
    const models::PathModel model(
        models::ModelSpec{models::FbmSpec{hurst}, 0}, 257);
    const holder::ScalingFit fit = holder::variance_scaling(model, ks, 1000, 7);
    CHECK(std::abs(fit.alpha_hat - hurst) < 0.05);
  }
}

TEST_CASE("variance scaling preconditions") {
  const models::PathModel model(models::ModelSpec{models::FbmSpec{0.5}, 0},
                                257);
  const std::vector<int> ks{2, 3, 4, 5, 6};
  CHECK_THROWS_AS(holder::variance_scaling(model, ks, 999, 1),
                  std::invalid_argument);
  const std::vector<int> few{1, 2, 3, 4};
  CHECK_THROWS_AS(holder::variance_scaling(model, few, 1000, 1),
                  std::invalid_argument);
  // 2^-k lags cannot align with a grid of 100 steps.
  const models::PathModel off(models::ModelSpec{models::FbmSpec{0.5}, 0}, 101);
  const std::vector<int> k3{3, 4, 5, 6, 7};
  CHECK_THROWS_AS(holder::variance_scaling(off, k3, 1000, 1),
                  std::invalid_argument);
}

TEST_CASE("pathwise exponent on deterministic paths") {
  CHECK(holder::pathwise_exponent(
            make_path(1025, [](double t) { return 3.0 * t; })) ==
        doctest::Approx(1.0).epsilon(1e-10));
  // Concave root: the max oscillation at lag d sits at the origin and
  // equals sqrt(d), so the fitted slope is exactly 1/2.
  CHECK(holder::pathwise_exponent(
            make_path(1025, [](double t) { return std::sqrt(t); })) ==
        doctest::Approx(0.5).epsilon(1e-10));
  CHECK(holder::pathwise_exponent(make_path(1025, [](double) { return 4.0; })) ==
        std::numeric_limits<double>::infinity());

  CHECK_THROWS_AS(
      holder::pathwise_exponent(make_path(513, [](double t) { return t; })),
      std::invalid_argument);
  // 1024 points = 1023 steps: no dyadic structure at all.
  CHECK_THROWS_AS(
      holder::pathwise_exponent(make_path(1024, [](double t) { return t; })),
      std::invalid_argument);
}

TEST_CASE("pathwise exponent concentrates near the hurst index") {
  const models::PathModel model(models::ModelSpec{models::FbmSpec{0.5}, 0},
                                1025);
  std::vector<double> exponents;
  for (std::size_t i = 0; i < 20; ++i) {
    exponents.push_back(
        holder::pathwise_exponent(model.sample(child_seed(88, i))));
  }
  std::nth_element(exponents.begin(), exponents.begin() + 10, exponents.end());
  CHECK(std::abs(exponents[10] - 0.5) < 0.1);
}

TEST_CASE("iff report is exact on a deterministic linear model") {
  const models::PathModel lin =
      models::PathModel::from_function([](double t) { return t; }, 1025);
  holder::IffConfig config;
  config.moment_ks = {3, 4, 5, 6, 7};
  config.n_paths_moment = 1000;
  config.n_seeds_path = 4;
  config.epsilons = {0.5};
  config.claimed_alpha = 1.0;
  config.seed = 13;
  const holder::IffReport report = holder::iff_report(lin, lin, config);

  CHECK(report.alpha_moment == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(report.alpha_path_median == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(report.alpha_reference == 1.0);
  CHECK(report.moment_ok);
  CHECK(report.path_ok);
  CHECK(report.directions_agree);
  CHECK(report.pass);

  REQUIRE(report.epsilon_checks.size() == 1);
  const holder::EpsilonCheck& check = report.epsilon_checks[0];
  CHECK(check.epsilon == 0.5);
  CHECK(check.paths == 1000);
  CHECK(check.violations == 0);
  // All paths identical: the stride-2 subsample has 513 points and the
  // linear-path Sobolev constant 16 sqrt2 (1 - 1/513)^(1/4).
  const double expected =
      8.0 * std::pow(4.0, 0.25) * 2.0 * std::pow(1.0 - 1.0 / 513.0, 0.25);
  CHECK(check.mean_c_eps == doctest::Approx(expected).epsilon(1e-9));
  CHECK(check.max_c_eps == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("iff report marks inadmissible epsilons and rejects empty lists") {
  const models::PathModel lin =
      models::PathModel::from_function([](double t) { return t; }, 1025);
  holder::IffConfig config;
  config.moment_ks = {3, 4, 5, 6, 7};
  config.n_seeds_path = 2;
  // gamma * q = (1 - 0.95) * (2/1.9) <= 1: skipped, not run.
  config.epsilons = {1.9};
  config.claimed_alpha = 1.0;
  const holder::IffReport report = holder::iff_report(lin, lin, config);
  REQUIRE(report.epsilon_checks.size() == 1);
  CHECK(report.epsilon_checks[0].epsilon == 1.9);
  CHECK(report.epsilon_checks[0].paths == 0);
  CHECK(report.epsilon_checks[0].violations == 0);

  config.epsilons = {};
  CHECK_THROWS_AS(holder::iff_report(lin, lin, config), std::invalid_argument);
}

TEST_CASE("iff report passes fbm against its own scaling") {
  holder::IffConfig config;
  config.moment_ks = {2, 3, 4, 5, 6};
  config.n_paths_moment = 1000;
  config.n_points_moment = 257;
  config.n_seeds_path = 10;
  config.n_points_path = 1025;
  config.epsilons = {0.2};
  config.seed = 5;
  const holder::IffReport report =
      holder::iff_report(models::ModelSpec{models::FbmSpec{0.7}, 0}, config);
  CHECK(report.pass);
  CHECK(std::abs(report.alpha_moment - 0.7) < 0.05);
  REQUIRE(report.epsilon_checks.size() == 1);
  CHECK(report.epsilon_checks[0].violations == 0);
  CHECK(report.epsilon_checks[0].max_c_eps > 0.0);
}

TEST_CASE("iff report fails a wrongly claimed exponent") {
  holder::IffConfig config;
  config.moment_ks = {2, 3, 4, 5, 6};
  config.n_paths_moment = 1000;
  config.n_points_moment = 257;
  config.n_seeds_path = 10;
  config.n_points_path = 1025;
  config.epsilons = {0.2};
  config.claimed_alpha = 0.7;  // the model scales like 0.3
  config.seed = 6;
  const holder::IffReport report =
      holder::iff_report(models::ModelSpec{models::FbmSpec{0.3}, 0}, config);
  CHECK(!report.moment_ok);
  CHECK(!report.pass);
  CHECK(std::abs(report.alpha_moment - 0.3) < 0.05);
}

TEST_CASE("exponential moment probe on constant samples") {
  const std::vector<double> ones(2000, 1.0);
  const holder::ExpMomentReport report =
      holder::exp_moment_check(ones, 0.5, 0.5);
  CHECK(report.estimate == doctest::Approx(std::exp(0.5)).epsilon(1e-12));
  CHECK(report.rel_change < 1e-12);
  CHECK(report.trim_ratio == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(!report.beta_too_large);
  CHECK(report.stable);
}

TEST_CASE("exponential moment probe flags overflow and instability") {
  const std::vector<double> huge(1000, 2000.0);
  const holder::ExpMomentReport overflow =
      holder::exp_moment_check(huge, 1.0, 0.5);
  CHECK(overflow.beta_too_large);
  CHECK(!overflow.stable);
  CHECK(std::isinf(overflow.estimate));

  // Exponential-tailed samples: E exp(beta C) is finite for beta < 1 and
  // divergent past it, so the probe must flip between these two rates.
  std::vector<double> expo(4000);
  for (std::size_t i = 0; i < expo.size(); ++i) {
    const double u = (static_cast<double>(i) + 0.5) / 4000.0;
    expo[i] = -std::log1p(-u);
  }
  std::shuffle(expo.begin(), expo.end(), std::mt19937_64(99));
  CHECK(holder::exp_moment_check(expo, 0.2, 1.0).stable);
  CHECK(!holder::exp_moment_check(expo, 1.2, 1.0).stable);

  CHECK_THROWS_AS(holder::exp_moment_check(std::vector<double>(10, 1.0), 0.5, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(holder::exp_moment_check(huge, -0.5, 1.0),
                  std::invalid_argument);
  const std::vector<double> neg(1000, -1.0);
  CHECK_THROWS_AS(holder::exp_moment_check(neg, 0.5, 1.0),
                  std::invalid_argument);
}
