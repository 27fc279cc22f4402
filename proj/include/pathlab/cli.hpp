#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pathlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFail = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalError = 3;

// Everything a run needs; empty vectors mean "use the subcommand default".
// All numeric windows are validated before any simulation starts.
struct RunConfig {
  std::string subcommand;
  std::string model = "fbm";  // fbm | wick | product | sheet
  std::vector<double> hurst;  // 1 value (2 for product/sheet; 2nd defaults to 1st)
  int order = 2;              // chaos order for the wick model
  std::vector<std::size_t> grid;
  std::size_t n_paths = 1000;
  std::size_t n_seeds = 100;  // path-direction seeds (holder)
  std::uint64_t seed = 1;
  double beta = 0.0;   // 0 = half the admissible window
  double beta0 = 0.0;  // 0 = half the admissible window
  double iota = 0.5;
  double c0 = 2.0;
  std::vector<double> alphas;    // repeatable per axis
  std::vector<double> epsilons;  // holder
  std::vector<double> u_grid;    // tail
  double interval_lo = 0.0;
  double interval_hi = 1.0;
  double base_point = 0.0;
  double scale = 1.0;  // multiplies sampled paths (tail, grr)
  std::string input;   // optional path CSV replacing simulation (grr)
  std::string out = ".";
  unsigned threads = 0;  // 0 = all cores; outputs do not depend on this
};

// Parses argv (subcommands simulate/moments/grr/field/tail/holder), writes
// report files plus a manifest under --out, and maps failures to exit codes:
// 0 success, 1 verification failure, 2 configuration error, 3 numerical error.
int run(int argc, const char* const* argv);

// Dispatch for an already-populated config (manifest text supplied verbatim);
// same exit-code contract.  Used by run() and by tests.
int run(RunConfig config, const std::string& manifest_text);

}  // namespace pathlab::cli
