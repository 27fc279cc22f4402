#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pathlab {

// Thrown when a numeric procedure cannot deliver a finite, trustworthy
// result (failed factorization, overflowing exponential, quadrature that
// refuses to converge).  Caller mistakes raise std::invalid_argument instead.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// One realization of a scalar process on a uniform grid over [0, 1].
// Invariants: grid.front() == 0, grid.back() == 1, sizes match, n >= 2.
struct SamplePath {
  std::vector<double> grid;
  std::vector<double> values;

  std::size_t size() const { return grid.size(); }
  double step() const { return 1.0 / static_cast<double>(grid.size() - 1); }
  void validate() const {
    if (grid.size() < 2 || grid.size() != values.size()) {
      throw std::invalid_argument("SamplePath: need matched grid/values, n >= 2");
    }
    if (grid.front() != 0.0 || grid.back() != 1.0) {
      throw std::invalid_argument("SamplePath: grid must span [0, 1]");
    }
  }
};

// Uniform grid 0, 1/(n-1), ..., 1.
inline std::vector<double> uniform_grid(std::size_t n_points) {
  if (n_points < 2) throw std::invalid_argument("uniform_grid: need >= 2 points");
  std::vector<double> t(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    t[i] = static_cast<double>(i) / static_cast<double>(n_points - 1);
  }
  t.back() = 1.0;
  return t;
}

// One realization of a scalar field on a uniform product grid over [0, 1]^n,
// stored row major (last axis fastest).  shape[j] >= 2 for every axis.
struct SampleField {
  std::vector<std::size_t> shape;
  std::vector<double> values;

  std::size_t dims() const { return shape.size(); }
  std::size_t total_points() const {
    std::size_t n = 1;
    for (std::size_t s : shape) n *= s;
    return n;
  }
  // Grid coordinate of index i along the given axis.
  double coord(std::size_t axis, std::size_t index) const {
    return static_cast<double>(index) / static_cast<double>(shape[axis] - 1);
  }
  std::size_t flat_index(std::span<const std::size_t> idx) const {
    std::size_t flat = 0;
    for (std::size_t a = 0; a < shape.size(); ++a) {
      flat = flat * shape[a] + idx[a];
    }
    return flat;
  }
  double at(std::span<const std::size_t> idx) const {
    return values[flat_index(idx)];
  }
  void validate() const {
    if (shape.empty()) throw std::invalid_argument("SampleField: empty shape");
    for (std::size_t s : shape) {
      if (s < 2) throw std::invalid_argument("SampleField: axis needs >= 2 points");
    }
    if (values.size() != total_points()) {
      throw std::invalid_argument("SampleField: values size mismatch");
    }
  }
};

// Outcome of a pathwise (or fieldwise) inequality sweep.
struct ViolationReport {
  std::size_t pairs_checked = 0;
  std::size_t violations = 0;
  // min over pairs of (bound - observed); negative iff violations > 0.
  double worst_margin = 0.0;
};

}  // namespace pathlab
