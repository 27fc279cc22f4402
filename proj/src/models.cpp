#include "pathlab/models.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <cmath>
#include <memory>
#include <utility>

#include "pathlab/rng.hpp"

namespace pathlab::models {

namespace {

void check_hurst(double hurst) {
  if (!(hurst > 0.0 && hurst < 1.0)) {
    throw std::invalid_argument("hurst must lie in (0, 1)");
  }
}

void check_points(std::size_t n_points) {
  if (n_points < 2) {
    throw std::invalid_argument("need at least 2 grid points");
  }
}

// Lower Cholesky factor of a covariance matrix built by `cov(i, j)`.
// A jitter of 1e-12 * max diagonal entry is always added before factoring,
// so near-singular covariances (e.g. high-order chaos bases on fine grids)
// factor deterministically; a failure past that is a hard error.
Eigen::MatrixXd cholesky_factor(std::size_t m,
                                const std::function<double(std::size_t, std::size_t)>& cov) {
  Eigen::MatrixXd c(m, m);
  double max_diag = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = cov(i, j);
      c(i, j) = v;
      c(j, i) = v;
    }
    max_diag = std::max(max_diag, c(i, i));
  }
  if (!(max_diag > 0.0)) {
    throw NumericalError("covariance matrix has no positive diagonal entry");
  }
  c.diagonal().array() += 1e-12 * max_diag;
  Eigen::LLT<Eigen::MatrixXd> llt(c);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("covariance matrix is not positive definite");
  }
  return llt.matrixL();
}

// Shared state of a pinned-at-zero Gaussian vector on the interior nodes.
struct GaussianFactor {
  Eigen::MatrixXd chol;  // lower factor, m x m

  // Draws the m correlated coordinates for one seed.
  Eigen::VectorXd draw(std::uint64_t seed) const {
    GaussianStream gauss(seed);
    Eigen::VectorXd z(chol.rows());
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = gauss.next();
    return chol.template triangularView<Eigen::Lower>() * z;
  }
};

// Factor for fractional Brownian motion on grid points 1..n-1 (t = 0 is
// pinned to X_0 = 0 and excluded from the covariance).
GaussianFactor fbm_factor(std::size_t n_points, double hurst) {
  const auto grid = uniform_grid(n_points);
  const std::size_t m = n_points - 1;
  return {cholesky_factor(m, [&](std::size_t i, std::size_t j) {
    return fbm_covariance(grid[i + 1], grid[j + 1], hurst);
  })};
}

SamplePath assemble_path(std::size_t n_points, const Eigen::VectorXd& interior) {
  SamplePath path;
  path.grid = uniform_grid(n_points);
  path.values.assign(n_points, 0.0);
  for (std::size_t i = 1; i < n_points; ++i) {
    path.values[i] = interior(static_cast<Eigen::Index>(i - 1));
  }
  return path;
}

// Applies the Wick (normalized Hermite image) transform in place:
// Y_t = t^(nH) He_n(X_t / t^H), with Y_0 = 0 by continuity.
void wick_transform(SamplePath& path, int order, double hurst) {
  for (std::size_t i = 1; i < path.size(); ++i) {
    const double t = path.grid[i];
    const double scale = std::pow(t, hurst);
    path.values[i] =
        std::pow(t, order * hurst) * hermite(order, path.values[i] / scale);
  }
  path.values[0] = 0.0;
}

struct FactorParams {
  double hurst;
  int order;  // 1 = plain fBm
};

FactorParams factor_params(const FactorSpec& spec) {
  if (const auto* fbm = std::get_if<FbmSpec>(&spec)) {
    check_hurst(fbm->hurst);
    return {fbm->hurst, 1};
  }
  const auto& wick = std::get<WickSpec>(spec);
  check_hurst(wick.hurst);
  if (wick.order < 1) throw std::invalid_argument("chaos order must be >= 1");
  return {wick.hurst, wick.order};
}

}  // namespace

double fbm_covariance(double s, double t, double hurst) {
  check_hurst(hurst);
  if (s < 0.0 || t < 0.0) {
    throw std::invalid_argument("fbm_covariance: times must be >= 0");
  }
  const double h2 = 2.0 * hurst;
  return 0.5 * (std::pow(t, h2) + std::pow(s, h2) - std::pow(std::abs(t - s), h2));
}

double hermite(int n, double x) {
  if (n < 0) throw std::invalid_argument("hermite: order must be >= 0");
  if (n == 0) return 1.0;
  double prev = 1.0;  // He_0
  double cur = x;     // He_1
  for (int k = 1; k < n; ++k) {
    const double next = x * cur - static_cast<double>(k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

SamplePath sample_fbm(std::size_t n_points, double hurst, std::uint64_t seed) {
  return PathModel(ModelSpec{FbmSpec{hurst}, 0}, n_points).sample(seed);
}

SamplePath sample_wick_chaos(std::size_t n_points, int order, double hurst,
                             std::uint64_t seed) {
  return PathModel(ModelSpec{WickSpec{order, hurst}, 0}, n_points).sample(seed);
}

SamplePath sample_product(const FactorSpec& left, const FactorSpec& right,
                          std::size_t n_points, std::uint64_t seed) {
  return PathModel(ModelSpec{ProductSpec{left, right}, 0}, n_points).sample(seed);
}

SampleField sample_fbm_sheet(std::size_t n1, std::size_t n2, double hurst1,
                             double hurst2, std::uint64_t seed) {
  return FieldModel(FbmSheetSpec{hurst1, hurst2}, n1, n2).sample(seed);
}

PathModel::PathModel(const ModelSpec& spec, std::size_t n_points) {
  check_points(n_points);
  n_points_ = n_points;

  if (std::holds_alternative<FbmSheetSpec>(spec.kind)) {
    throw std::invalid_argument("PathModel: sheet specs need FieldModel");
  }

  if (const auto* product = std::get_if<ProductSpec>(&spec.kind)) {
    const FactorParams lp = factor_params(product->left);
    const FactorParams rp = factor_params(product->right);
    auto lf = std::make_shared<GaussianFactor>(fbm_factor(n_points, lp.hurst));
    auto rf = std::make_shared<GaussianFactor>(fbm_factor(n_points, rp.hurst));
    sampler_ = [n_points, lp, rp, lf, rf](std::uint64_t seed) {
      // Independent factors: decorrelate the two streams from one seed.
      SamplePath a = assemble_path(n_points, lf->draw(child_seed(seed, 1)));
      SamplePath b = assemble_path(n_points, rf->draw(child_seed(seed, 2)));
      if (lp.order > 1) wick_transform(a, lp.order, lp.hurst);
      if (rp.order > 1) wick_transform(b, rp.order, rp.hurst);
      for (std::size_t i = 0; i < n_points; ++i) a.values[i] *= b.values[i];
      return a;
    };
    return;
  }

  FactorParams params{};
  if (const auto* fbm = std::get_if<FbmSpec>(&spec.kind)) {
    params = factor_params(FactorSpec{*fbm});
  } else {
    params = factor_params(FactorSpec{std::get<WickSpec>(spec.kind)});
  }
  auto factor = std::make_shared<GaussianFactor>(fbm_factor(n_points, params.hurst));
  sampler_ = [n_points, params, factor](std::uint64_t seed) {
    SamplePath path = assemble_path(n_points, factor->draw(seed));
    if (params.order > 1) wick_transform(path, params.order, params.hurst);
    return path;
  };
}

PathModel PathModel::from_function(std::function<double(double)> f,
                                   std::size_t n_points) {
  check_points(n_points);
  PathModel model;
  model.n_points_ = n_points;
  model.sampler_ = [f = std::move(f), n_points](std::uint64_t) {
    SamplePath path;
    path.grid = uniform_grid(n_points);
    path.values.resize(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
      path.values[i] = f(path.grid[i]);
    }
    return path;
  };
  return model;
}

FieldModel::FieldModel(const FbmSheetSpec& spec, std::size_t n1, std::size_t n2) {
  check_points(n1);
  check_points(n2);
  check_hurst(spec.hurst1);
  check_hurst(spec.hurst2);
  shape_ = {n1, n2};

  const auto g1 = uniform_grid(n1);
  const auto g2 = uniform_grid(n2);
  const std::size_t m1 = n1 - 1;
  const std::size_t m2 = n2 - 1;
  // Interior nodes only: the sheet vanishes on both axes.
  auto factor = std::make_shared<GaussianFactor>(GaussianFactor{
      cholesky_factor(m1 * m2, [&](std::size_t i, std::size_t j) {
        const double s1 = g1[i / m2 + 1], s2 = g2[i % m2 + 1];
        const double t1 = g1[j / m2 + 1], t2 = g2[j % m2 + 1];
        return fbm_covariance(s1, t1, spec.hurst1) *
               fbm_covariance(s2, t2, spec.hurst2);
      })});

  sampler_ = [n1, n2, m2, factor](std::uint64_t seed) {
    const Eigen::VectorXd interior = factor->draw(seed);
    SampleField field;
    field.shape = {n1, n2};
    field.values.assign(n1 * n2, 0.0);
    for (std::size_t i = 1; i < n1; ++i) {
      for (std::size_t j = 1; j < n2; ++j) {
        field.values[i * n2 + j] =
            interior(static_cast<Eigen::Index>((i - 1) * m2 + (j - 1)));
      }
    }
    return field;
  };
}

SampleField FieldModel::sample(std::uint64_t seed) const {
  return sampler_(seed);
}

}  // namespace pathlab::models
