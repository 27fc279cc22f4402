#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace pathlab {

// splitmix64 finalizer; bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Decorrelated per-task seed derived from a master seed.  Every Monte Carlo
// driver seeds task i with child_seed(master, i), so results depend only on
// (master, i) and never on thread scheduling.
inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ index);
}

// Standard normal stream: mt19937_64 + Box-Muller.  Consumption order is
// part of the reproducibility contract, so samplers must draw strictly
// sequentially from one stream per task.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    constexpr double two_pi = 6.283185307179586476925286766559;
    spare_ = r * std::sin(two_pi * u2);
    have_spare_ = true;
    return r * std::cos(two_pi * u2);
  }

 private:
  double uniform01() {
    // 53-bit mantissa in [0, 1).
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace pathlab
