#pragma once

#include <span>

#include "pathlab/types.hpp"

namespace pathlab {

struct QuadratureOptions {
  int initial_nodes = 512;     // per axis; shrunk automatically if the
                               // tensor grid would blow the cell budget
  double target_rel = 1e-6;    // doubling stops at this relative change
  double accept_rel = 1e-4;    // failing even this after max_doublings throws
  int max_doublings = 8;
  double max_cells = 3.0e7;    // cap on total integrand evaluations per pass
};

struct QuadratureResult {
  double value = 0.0;
  double last_rel_change = 0.0;
  int nodes_per_axis = 0;
  bool met_target = false;
};

// I(delta) = \int_0^delta (a + b(-log u))^iota u^(alpha-1) du, delta in (0,1].
//
// Computed as a midpoint rule in x = log u: the substitution turns the
// endpoint singularity into the entire function (a - bx)^iota e^(alpha x),
// and the domain is truncated at depth where e^(alpha x) has decayed far
// below the target accuracy.  Node count doubles until the value settles.
QuadratureResult weighted_log_power_integral(double delta, double alpha,
                                             double iota, double a, double b,
                                             const QuadratureOptions& opts = {});

// Product-domain version on \prod_j [0, delta_j]:
//   \int (a + b\sum_j(-log u_j))^iota \prod_j u_j^(alpha_j - 1) du.
// Same log-axis midpoint scheme, tensorized; all axes double together.
QuadratureResult tensor_log_power_integral(std::span<const double> deltas,
                                           std::span<const double> alphas,
                                           double iota, double a, double b,
                                           const QuadratureOptions& opts = {});

}  // namespace pathlab
