#include "doctest.h"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <vector>

#include "pathlab/quadrature.hpp"

using namespace pathlab;

namespace {

// Closed form of \int_0^delta (a + b(-log u))^iota u^(alpha-1) du via the
// substitution y = a + b(-log u):
//   e^(alpha a / b) / b * (alpha/b)^-(iota+1) * Gamma(iota+1, (alpha/b)(a+bL))
// with L = -log delta and Gamma(s, x) the upper incomplete gamma function.
double closed_form(double delta, double alpha, double iota, double a,
                   double b) {
  const double L = -std::log(delta);
  const double c = alpha / b;
  return std::exp(alpha * a / b) / b * std::pow(c, -(iota + 1.0)) *
         boost::math::tgamma(iota + 1.0, c * (a + b * L));
}

}  // namespace

TEST_CASE("log-power integral matches the incomplete-gamma closed form") {
  struct Case {
    double delta, alpha, iota, a, b;
  };
  const Case cases[] = {
      {1.0, 0.5, 1.0, 0.0, 1.0},   // value 1!/0.5^2 = 4
      {1.0, 1.0, 2.0, 0.0, 1.0},   // value 2!/1 = 2
      {0.3, 0.7, 1.6, 0.9, 2.0},   // fully generic
      {0.6, 0.45, 0.8, 2.3, 1.7},  // iota < 1 branch
      {1.0, 1.0, 0.5, 4.0, 2.0},   // the modulus-bound shape at delta = 1
  };
  for (const Case& c : cases) {
    const QuadratureResult res =
        weighted_log_power_integral(c.delta, c.alpha, c.iota, c.a, c.b);
    const double oracle = closed_form(c.delta, c.alpha, c.iota, c.a, c.b);
    CHECK(res.value == doctest::Approx(oracle).epsilon(1e-6));
    CHECK(res.met_target);
    CHECK(res.nodes_per_axis >= 1024);
  }
}

TEST_CASE("log-power integral elementary iota=1 case") {
  // \int_0^d (a - b log u) u^(alpha-1) du = a d^a/alpha + b d^a (1 - alpha
  // log d)/alpha^2 with d^a meaning delta^alpha.
  const double delta = 0.37, alpha = 0.62, a = 1.4, b = 0.9;
  const double da = std::pow(delta, alpha);
  const double oracle = a * da / alpha +
                        b * da * (1.0 - alpha * std::log(delta)) /
                            (alpha * alpha);
  const QuadratureResult res =
      weighted_log_power_integral(delta, alpha, 1.0, a, b);
  CHECK(res.value == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("log-power integral is monotone in delta and vanishes with it") {
  double prev = 0.0;
  for (int k = 10; k >= 1; --k) {
    const double delta = std::ldexp(1.0, -k);
    const double value =
        weighted_log_power_integral(delta, 0.5, 0.5, 1.0, 2.0).value;
    CHECK(value > prev);
    prev = value;
  }
  const double tiny = weighted_log_power_integral(1.0 / 1024, 0.5, 0.5, 1.0, 2.0).value;
  const double full = weighted_log_power_integral(1.0, 0.5, 0.5, 1.0, 2.0).value;
  CHECK(tiny < 0.2 * full);
}

TEST_CASE("tensor integral matches separable closed forms") {
  // iota = 1 splits into per-axis pieces: a P1 P2 + b (I1 P2 + P1 I2) with
  // Pk = dk^ak/ak and Ik = dk^ak (1 - ak log dk)/ak^2.
  const std::vector<double> deltas{0.5, 0.8};
  const std::vector<double> alphas{0.6, 0.9};
  const double a = 0.7, b = 1.3;
  auto P = [&](int k) { return std::pow(deltas[k], alphas[k]) / alphas[k]; };
  auto I = [&](int k) {
    return std::pow(deltas[k], alphas[k]) *
           (1.0 - alphas[k] * std::log(deltas[k])) / (alphas[k] * alphas[k]);
  };
  const double oracle = a * P(0) * P(1) + b * (I(0) * P(1) + P(0) * I(1));
  // Two axes under the default cell budget stop at the accept threshold
  // (1e-4 relative change), not the 1e-6 target; test the honest contract.
  const QuadratureResult res =
      tensor_log_power_integral(deltas, alphas, 1.0, a, b);
  CHECK(res.value == doctest::Approx(oracle).epsilon(1e-4));

  // iota = 2, full unit box: expand (L1 + L2)^2 into factored moments
  // using \int (-log v)^m v^(alpha-1) dv = m!/alpha^(m+1).
  const std::vector<double> ones{1.0, 1.0};
  const std::vector<double> al2{0.5, 0.25};
  const double a1 = al2[0], a2 = al2[1];
  const double oracle2 = 2.0 / (a1 * a1 * a1) / a2 +
                         2.0 / (a1 * a1) / (a2 * a2) +
                         2.0 / (a2 * a2 * a2) / a1;
  const QuadratureResult res2 =
      tensor_log_power_integral(ones, al2, 2.0, 0.0, 1.0);
  CHECK(res2.value == doctest::Approx(oracle2).epsilon(1e-4));

  // With room to keep doubling, the 1e-6 target is reached and met.
  QuadratureOptions roomy;
  roomy.max_cells = 1.1e9;
  roomy.max_doublings = 12;
  const QuadratureResult res3 =
      tensor_log_power_integral(ones, al2, 2.0, 0.0, 1.0, roomy);
  CHECK(res3.met_target);
  CHECK(res3.value == doctest::Approx(oracle2).epsilon(1e-6));
}

TEST_CASE("tensor integral reduces to the scalar one on a single axis") {
  const std::vector<double> delta{0.44};
  const std::vector<double> alpha{0.71};
  const double one_axis =
      tensor_log_power_integral(delta, alpha, 1.3, 0.5, 2.0).value;
  const double scalar =
      weighted_log_power_integral(0.44, 0.71, 1.3, 0.5, 2.0).value;
  CHECK(one_axis == doctest::Approx(scalar).epsilon(1e-12));
}

TEST_CASE("tensor integral respects the cell budget") {
  QuadratureOptions opts;
  opts.initial_nodes = 512;
  opts.max_cells = 1.0e6;  // forces per-axis nodes down for n = 2
  const std::vector<double> ones{1.0, 1.0};
  const std::vector<double> alphas{0.5, 0.5};
  const QuadratureResult res =
      tensor_log_power_integral(ones, alphas, 1.0, 0.0, 1.0, opts);
  CHECK(static_cast<double>(res.nodes_per_axis) *
            static_cast<double>(res.nodes_per_axis) <=
        opts.max_cells);
  // 16 = 1/(a1 a2) * (1/a1 + 1/a2) at alpha = (0.5, 0.5).
  CHECK(res.value == doctest::Approx(16.0).epsilon(1e-4));
}

TEST_CASE("quadrature rejects out-of-range parameters") {
  CHECK_THROWS_AS(weighted_log_power_integral(0.0, 0.5, 1.0, 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(weighted_log_power_integral(1.5, 0.5, 1.0, 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(weighted_log_power_integral(0.5, 0.0, 1.0, 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(weighted_log_power_integral(0.5, 0.5, 0.0, 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(weighted_log_power_integral(0.5, 0.5, 1.0, -0.1, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(weighted_log_power_integral(0.5, 0.5, 1.0, 0.0, 0.0),
                  std::invalid_argument);
  const std::vector<double> d{0.5, 0.5};
  const std::vector<double> a{0.5};
  CHECK_THROWS_AS(tensor_log_power_integral(d, a, 1.0, 0.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("non-convergence is reported as a numerical error") {
  QuadratureOptions opts;
  opts.max_doublings = 0;  // no refinement possible, so no error estimate
  CHECK_THROWS_AS(weighted_log_power_integral(1.0, 0.5, 1.0, 0.0, 1.0, opts),
                  NumericalError);

  QuadratureOptions strict;
  strict.initial_nodes = 16;
  strict.max_doublings = 1;
  strict.target_rel = 0.0;
  strict.accept_rel = 1e-18;
  CHECK_THROWS_AS(
      weighted_log_power_integral(1.0, 0.5, 1.0, 0.0, 1.0, strict),
      NumericalError);
}
