#pragma once

#include <cstdint>
#include <functional>
#include <variant>

#include "pathlab/types.hpp"

namespace pathlab::models {

struct FbmSpec {
  double hurst = 0.5;
};

struct WickSpec {
  int order = 2;
  double hurst = 0.5;
};

// A product factor is one of the two scalar Gaussian-family processes.
using FactorSpec = std::variant<FbmSpec, WickSpec>;

struct ProductSpec {
  FactorSpec left;
  FactorSpec right;
};

struct FbmSheetSpec {
  double hurst1 = 0.5;
  double hurst2 = 0.5;
};

struct ModelSpec {
  std::variant<FbmSpec, WickSpec, ProductSpec, FbmSheetSpec> kind;
  std::uint64_t seed = 1;
};

// Covariance of fractional Brownian motion at times s, t >= 0.
double fbm_covariance(double s, double t, double hurst);

// Probabilists' Hermite polynomial He_n(x).
double hermite(int n, double x);

// One-shot samplers: these factor the covariance on every call.  For Monte
// Carlo loops prefer PathModel / FieldModel, which factor once.
SamplePath sample_fbm(std::size_t n_points, double hurst, std::uint64_t seed);
SamplePath sample_wick_chaos(std::size_t n_points, int order, double hurst,
                             std::uint64_t seed);
SamplePath sample_product(const FactorSpec& left, const FactorSpec& right,
                          std::size_t n_points, std::uint64_t seed);
SampleField sample_fbm_sheet(std::size_t n1, std::size_t n2, double hurst1,
                             double hurst2, std::uint64_t seed);

// Prepared sampler for the scalar models.  The covariance factorization is
// computed in the constructor and shared across paths; path i of a run
// should be drawn with seed child_seed(master_seed, i).
class PathModel {
 public:
  // Throws std::invalid_argument for FbmSheetSpec (use FieldModel).
  PathModel(const ModelSpec& spec, std::size_t n_points);

  // Deterministic stub for tests: values f(t), seed ignored.
  static PathModel from_function(std::function<double(double)> f,
                                 std::size_t n_points);

  SamplePath sample(std::uint64_t seed) const { return sampler_(seed); }
  std::size_t n_points() const { return n_points_; }

 private:
  PathModel() = default;
  std::size_t n_points_ = 0;
  std::function<SamplePath(std::uint64_t)> sampler_;
};

// Prepared sampler for fractional Brownian sheets on an n1 x n2 grid.
class FieldModel {
 public:
  FieldModel(const FbmSheetSpec& spec, std::size_t n1, std::size_t n2);
  SampleField sample(std::uint64_t seed) const;
  const std::vector<std::size_t>& shape() const { return shape_; }

 private:
  std::vector<std::size_t> shape_;
  std::function<SampleField(std::uint64_t)> sampler_;
};

}  // namespace pathlab::models
