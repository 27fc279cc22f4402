#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pathlab/grr.hpp"
#include "pathlab/models.hpp"
#include "pathlab/quadrature.hpp"
#include "pathlab/types.hpp"

namespace pathlab::fields {

// Multi-index of the grid node nearest to `point`; rejects coordinates more
// than 1e-9 (in index units) away from a node.
std::vector<std::size_t> grid_indices(const SampleField& field,
                                      std::span<const double> point);

// Rectangular (box) increment of the field between multi-indices s and t,
// as the signed 2^n corner sum: corners pick coordinate k from s or t, the
// sign is (-1)^(#coordinates taken from s).
double box_increment(const SampleField& field, std::span<const std::size_t> s,
                     std::span<const std::size_t> t);

// The same quantity via the operator product prod_k (I - V_k), expanded
// recursively one axis at a time.  Must agree exactly with box_increment.
double box_increment_operator(const SampleField& field,
                              std::span<const std::size_t> s,
                              std::span<const std::size_t> t);

struct DMetricEstimate {
  double value = 0.0;      // root mean square of the box increment
  double std_error = 0.0;  // delta-method standard error of the RMS
};

// Monte Carlo estimate of d_X(s, t) = sqrt(E |box increment|^2) over
// n_paths independent fields; points are coordinates in [0,1]^2.
DMetricEstimate estimate_d_metric(const models::FieldModel& model,
                                  std::span<const double> s,
                                  std::span<const double> t,
                                  std::size_t n_paths,
                                  std::uint64_t master_seed,
                                  unsigned threads = 0);

// Field analogue of grr::compute_B: the 2n-dimensional midpoint sum of
// Psi(|box increment| / prod_j gap_j^alpha_j) over all grid-cell pairs.
// Pairs sharing a coordinate on any axis form the diagonal band and
// contribute Psi(0) = 1.
grr::BEstimate compute_B_field(const SampleField& field,
                               std::span<const double> alphas, double beta,
                               double iota);

// Field modulus bound
//   8^n \int_0^{delta_1}..\int_0^{delta_n}
//       beta^-iota (log(4^n B / (u_1^2..u_n^2)))^iota d(u^alpha_1)..d(u^alpha_n).
double field_modulus_bound(std::span<const double> deltas, double B,
                           double beta, double iota,
                           std::span<const double> alphas,
                           const QuadratureOptions& quad = {});

// Constants of the fieldwise two-term bound
//   |box| <= C(omega) prod gap_j^alpha_j
//            + C_d prod gap_j^alpha_j (log 1/prod gap_j)^iota:
//   C(omega) = 8^n 3^max(iota-1,0) beta^-iota (log max(4^n B, 1))^iota,
//   C_d = 8^n prod(alpha_j) 2^iota 3^max(iota-1,0) beta^-iota
//         [prod(1/alpha_j) + V],  V the n-dim v-integral.
grr::HolderConstants field_holder_constants(double B, double beta, double iota,
                                            std::span<const double> alphas,
                                            const QuadratureOptions& quad = {});

// C-tilde = C_d * max over [0,1]^n of prod x_j^alpha_j (-log prod x_j)^iota,
// by the analytic reduction: the maximum loads the whole log-budget on the
// smallest alpha, giving C_d e^-iota (iota/min_j alpha_j)^iota.
double c_tilde(std::span<const double> alphas, double iota, double c_d);

// Brute-force oracle for c_tilde: grid search at points_per_axis nodes per
// axis, then refine_rounds of zooming around the argmax.
double c_tilde_grid_search(std::span<const double> alphas, double iota,
                           double c_d, std::size_t points_per_axis = 1000,
                           int refine_rounds = 3);

// Sweeps all index pairs with every axis gap > 0 against the two-term bound.
ViolationReport verify_field_modulus(const SampleField& field, double c_omega,
                                     double c_d,
                                     std::span<const double> alphas,
                                     double iota);

}  // namespace pathlab::fields
