#include "doctest.h"

#include <cmath>
#include <cstddef>
#include <vector>

#include "pathlab/models.hpp"
#include "pathlab/rng.hpp"
#include "pathlab/stats.hpp"
#include "test_support.hpp"

using namespace pathlab;
using pathlab::testing::four_se;

TEST_CASE("fbm covariance closed form") {
  CHECK(models::fbm_covariance(1.0, 1.0, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(models::fbm_covariance(0.5, 1.0, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  // H = 1/2 reduces to min(s, t).
  CHECK(models::fbm_covariance(0.3, 0.8, 0.5) == doctest::Approx(0.3).epsilon(1e-12));

  // Diagonal is t^(2H); symmetry in (s, t).
  const double ts[] = {0.12, 0.5, 0.93};
  const double hs[] = {0.25, 0.5, 0.8};
  for (double t : ts) {
    for (double h : hs) {
      CHECK(models::fbm_covariance(t, t, h) ==
            doctest::Approx(std::pow(t, 2.0 * h)).epsilon(1e-13));
      CHECK(models::fbm_covariance(0.2, t, h) ==
            doctest::Approx(models::fbm_covariance(t, 0.2, h)).epsilon(1e-15));
    }
  }
}

TEST_CASE("fbm sampling is deterministic in the seed") {
  const SamplePath a = models::sample_fbm(65, 0.3, 42);
  const SamplePath b = models::sample_fbm(65, 0.3, 42);
  const SamplePath c = models::sample_fbm(65, 0.3, 43);
  CHECK(a.grid == b.grid);
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
  CHECK(a.values[0] == 0.0);
  a.validate();
}

TEST_CASE("fbm variance at t=1 matches the covariance oracle") {
  const std::size_t n_paths = 10000;
  const models::PathModel model(models::ModelSpec{models::FbmSpec{0.7}, 0},
                                17);
  std::vector<double> x1_sq(n_paths);
  for (std::size_t i = 0; i < n_paths; ++i) {
    x1_sq[i] = std::pow(model.sample(child_seed(5, i)).values.back(), 2);
  }
  CHECK(std::abs(mean(x1_sq) - 1.0) <= four_se(x1_sq));
}

TEST_CASE("brownian increments on disjoint intervals are uncorrelated") {
  const std::size_t n_paths = 10000;
  const models::PathModel model(models::ModelSpec{models::FbmSpec{0.5}, 0},
                                17);
  std::vector<double> d1(n_paths), d2(n_paths);
  for (std::size_t i = 0; i < n_paths; ++i) {
    const SamplePath path = model.sample(child_seed(7, i));
    d1[i] = path.values[8] - path.values[4];    // [0.25, 0.50]
    d2[i] = path.values[14] - path.values[10];  // [0.625, 0.875]
  }
  const double m1 = mean(d1), m2 = mean(d2);
  double cov = 0.0;
  for (std::size_t i = 0; i < n_paths; ++i) {
    cov += (d1[i] - m1) * (d2[i] - m2);
  }
  cov /= static_cast<double>(n_paths - 1);
  const double corr = cov / std::sqrt(variance(d1) * variance(d2));
  // Under independence the correlation estimate has SE ~ 1/sqrt(n).
  CHECK(std::abs(corr) <= 4.0 / std::sqrt(static_cast<double>(n_paths)));
}

TEST_CASE("hermite polynomials satisfy the probabilists' recurrence") {
  CHECK(models::hermite(0, 1.7) == 1.0);
  CHECK(models::hermite(0, -3.2) == 1.0);
  CHECK(models::hermite(2, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(models::hermite(3, 2.0) == doctest::Approx(2.0).epsilon(1e-13));
  // He_4(x) = x^4 - 6x^2 + 3 against the recurrence output.
  for (double x : {-2.4, -0.3, 0.0, 1.1, 3.7}) {
    const double he4 = x * x * x * x - 6.0 * x * x + 3.0;
    CHECK(models::hermite(4, x) == doctest::Approx(he4).epsilon(1e-12));
  }
}

TEST_CASE("wick order 1 reproduces the underlying fbm path") {
  const SamplePath fbm = models::sample_fbm(33, 0.4, 11);
  const SamplePath wick = models::sample_wick_chaos(33, 1, 0.4, 11);
  CHECK(fbm.values == wick.values);
}

TEST_CASE("wick order 2 has the chaos moments at t=1") {
  const std::size_t n_paths = 10000;
  const models::PathModel model(
      models::ModelSpec{models::WickSpec{2, 0.5}, 0}, 9);
  std::vector<double> y1(n_paths), y1_sq(n_paths);
  for (std::size_t i = 0; i < n_paths; ++i) {
    const double v = model.sample(child_seed(9, i)).values.back();
    y1[i] = v;
    y1_sq[i] = v * v;
  }
  // E He_2(Z) = 0 and E He_2(Z)^2 = 2! = 2 for standard Gaussian Z.
  CHECK(std::abs(mean(y1)) <= four_se(y1));
  CHECK(std::abs(mean(y1_sq) - 2.0) <= four_se(y1_sq));
}

TEST_CASE("wick paths start at zero") {
  for (int order : {1, 2, 3}) {
    const SamplePath path = models::sample_wick_chaos(17, order, 0.6, 3);
    CHECK(path.values.front() == 0.0);
  }
}

TEST_CASE("product path is the elementwise product of its factors") {
  const models::FbmSpec left{0.5};
  const models::WickSpec right{2, 0.7};
  const std::uint64_t seed = 21;
  const SamplePath prod = models::sample_product(left, right, 33, seed);
  // Factors are drawn from the documented child seeds of the product seed.
  const SamplePath x = models::sample_fbm(33, 0.5, child_seed(seed, 1));
  const SamplePath y =
      models::sample_wick_chaos(33, 2, 0.7, child_seed(seed, 2));
  REQUIRE(prod.size() == x.size());
  for (std::size_t i = 0; i < prod.size(); ++i) {
    CHECK(prod.values[i] == x.values[i] * y.values[i]);
  }
  CHECK(prod.values[0] == 0.0);
}

TEST_CASE("product of independent fbm(0.5) factors has unit variance at 1") {
  const std::size_t n_paths = 10000;
  const models::PathModel model(
      models::ModelSpec{
          models::ProductSpec{models::FbmSpec{0.5}, models::FbmSpec{0.5}}, 0},
      9);
  std::vector<double> z1_sq(n_paths);
  for (std::size_t i = 0; i < n_paths; ++i) {
    z1_sq[i] = std::pow(model.sample(child_seed(13, i)).values.back(), 2);
  }
  // E (X_1 Y_1)^2 = E X_1^2 E Y_1^2 = 1 by independence.
  CHECK(std::abs(mean(z1_sq) - 1.0) <= four_se(z1_sq));
}

TEST_CASE("fbm sheet vanishes on the axes and is seed-deterministic") {
  const SampleField f1 = models::sample_fbm_sheet(6, 5, 0.5, 0.7, 31);
  const SampleField f2 = models::sample_fbm_sheet(6, 5, 0.5, 0.7, 31);
  f1.validate();
  CHECK(f1.values == f2.values);
  for (std::size_t i = 0; i < 6; ++i) {
    const std::size_t row0[] = {i, 0};
    CHECK(f1.at(row0) == 0.0);
  }
  for (std::size_t j = 0; j < 5; ++j) {
    const std::size_t col0[] = {0, j};
    CHECK(f1.at(col0) == 0.0);
  }
}

TEST_CASE("fbm sheet has product-covariance variance at the far corner") {
  const std::size_t n_fields = 10000;
  const models::FieldModel model(models::FbmSheetSpec{0.5, 0.5}, 5, 5);
  std::vector<double> corner_sq(n_fields);
  for (std::size_t i = 0; i < n_fields; ++i) {
    corner_sq[i] = std::pow(model.sample(child_seed(17, i)).values.back(), 2);
  }
  CHECK(std::abs(mean(corner_sq) - 1.0) <= four_se(corner_sq));
}

TEST_CASE("path model rejects sheet specs; from_function ignores the seed") {
  CHECK_THROWS_AS(
      models::PathModel(models::ModelSpec{models::FbmSheetSpec{}, 0}, 17),
      std::invalid_argument);

  const models::PathModel lin =
      models::PathModel::from_function([](double t) { return 3.0 * t; }, 33);
  const SamplePath a = lin.sample(1);
  const SamplePath b = lin.sample(999);
  CHECK(a.values == b.values);
  CHECK(a.values[16] == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("sample path and field invariants are enforced") {
  SamplePath bad;
  bad.grid = {0.0, 0.5};
  bad.values = {0.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.values = {0.0, 1.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);  // grid ends at 0.5

  SampleField field;
  field.shape = {3, 1};
  field.values.assign(3, 0.0);
  CHECK_THROWS_AS(field.validate(), std::invalid_argument);
}

TEST_CASE("child seeds separate parallel streams") {
  CHECK(child_seed(1, 0) != child_seed(1, 1));
  CHECK(child_seed(1, 5) != child_seed(2, 5));
  CHECK(child_seed(123, 456) == child_seed(123, 456));
}
