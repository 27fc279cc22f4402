#include "pathlab/fields.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pathlab/parallel.hpp"
#include "pathlab/rng.hpp"
#include "pathlab/stats.hpp"

namespace pathlab::fields {

namespace {

void check_shape_params(double beta, double iota) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
  if (!(iota > 0.0)) throw std::invalid_argument("iota must be > 0");
}

void check_alphas(std::span<const double> alphas) {
  if (alphas.empty()) throw std::invalid_argument("alphas must be nonempty");
  for (double a : alphas) {
    if (!(a > 0.0 && a <= 1.0)) {
      throw std::invalid_argument("every alpha must lie in (0, 1]");
    }
  }
}

void check_query(const SampleField& field, std::span<const std::size_t> s,
                 std::span<const std::size_t> t) {
  if (s.size() != field.dims() || t.size() != field.dims()) {
    throw std::invalid_argument("box_increment: index arity mismatch");
  }
  for (std::size_t k = 0; k < field.dims(); ++k) {
    if (s[k] >= field.shape[k] || t[k] >= field.shape[k]) {
      throw std::invalid_argument("box_increment: index out of range");
    }
  }
}

double expand_operator(const SampleField& field,
                       std::span<const std::size_t> s,
                       std::span<const std::size_t> t,
                       std::vector<std::size_t>& idx, std::size_t axis) {
  if (axis == field.dims()) return field.at(idx);
  idx[axis] = t[axis];
  const double keep = expand_operator(field, s, t, idx, axis + 1);
  idx[axis] = s[axis];
  const double substituted = expand_operator(field, s, t, idx, axis + 1);
  idx[axis] = t[axis];
  return keep - substituted;
}

// g(x) = prod_j x_j^alpha_j * (-log prod_j x_j)^iota with its limits at the
// boundary (0 at any x_j = 0 and at x = (1,..,1)).
double g_value(double prod_alpha, double neg_log_sum, double iota) {
  if (prod_alpha == 0.0 || neg_log_sum <= 0.0) return 0.0;
  return prod_alpha * std::pow(neg_log_sum, iota);
}

}  // namespace

std::vector<std::size_t> grid_indices(const SampleField& field,
                                      std::span<const double> point) {
  field.validate();
  if (point.size() != field.dims()) {
    throw std::invalid_argument("grid_indices: point arity mismatch");
  }
  std::vector<std::size_t> idx(point.size());
  for (std::size_t k = 0; k < point.size(); ++k) {
    const double scaled = point[k] * static_cast<double>(field.shape[k] - 1);
    const double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) > 1e-9 || rounded < 0.0 ||
        rounded > static_cast<double>(field.shape[k] - 1)) {
      throw std::invalid_argument("grid_indices: point is off the grid");
    }
    idx[k] = static_cast<std::size_t>(rounded);
  }
  return idx;
}

double box_increment(const SampleField& field, std::span<const std::size_t> s,
                     std::span<const std::size_t> t) {
  check_query(field, s, t);
  const std::size_t n = field.dims();
  std::vector<std::size_t> corner(n);
  double sum = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    int from_s = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (std::size_t{1} << k)) {
        corner[k] = s[k];
        ++from_s;
      } else {
        corner[k] = t[k];
      }
    }
    sum += (from_s % 2 == 0 ? 1.0 : -1.0) * field.at(corner);
  }
  return sum;
}

double box_increment_operator(const SampleField& field,
                              std::span<const std::size_t> s,
                              std::span<const std::size_t> t) {
  check_query(field, s, t);
  std::vector<std::size_t> idx(t.begin(), t.end());
  return expand_operator(field, s, t, idx, 0);
}

DMetricEstimate estimate_d_metric(const models::FieldModel& model,
                                  std::span<const double> s,
                                  std::span<const double> t,
                                  std::size_t n_paths,
                                  std::uint64_t master_seed,
                                  unsigned threads) {
  if (n_paths < 1000) {
    throw std::invalid_argument("estimate_d_metric: need n_paths >= 1000");
  }
  // Resolve the query against the model grid once, up front.
  SampleField probe;
  probe.shape = model.shape();
  probe.values.assign(probe.total_points(), 0.0);
  const auto s_idx = grid_indices(probe, s);
  const auto t_idx = grid_indices(probe, t);

  for (std::size_t k = 0; k < s_idx.size(); ++k) {
    if (s_idx[k] == t_idx[k]) return {0.0, 0.0};  // a (I - V_k) factor dies
  }

  std::vector<double> sq(n_paths);
  parallel_for_index(n_paths, threads, [&](std::size_t i) {
    const SampleField field = model.sample(child_seed(master_seed, i));
    const double box = box_increment(field, s_idx, t_idx);
    sq[i] = box * box;
  });
  const double m2 = mean(sq);
  if (m2 <= 0.0) return {0.0, 0.0};
  DMetricEstimate est;
  est.value = std::sqrt(m2);
  const double se_m2 =
      std::sqrt(variance(sq) / static_cast<double>(n_paths));
  est.std_error = se_m2 / (2.0 * est.value);
  return est;
}

grr::BEstimate compute_B_field(const SampleField& field,
                               std::span<const double> alphas, double beta,
                               double iota) {
  field.validate();
  check_shape_params(beta, iota);
  check_alphas(alphas);
  const std::size_t n = field.dims();
  if (alphas.size() != n) {
    throw std::invalid_argument("compute_B_field: alphas arity mismatch");
  }

  // Per-axis tables: 1/rho_j(gap) for every positive gap.
  std::vector<std::vector<double>> inv_rho(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double h = 1.0 / static_cast<double>(field.shape[k] - 1);
    inv_rho[k].resize(field.shape[k]);
    for (std::size_t d = 1; d < field.shape[k]; ++d) {
      inv_rho[k][d] = 1.0 / std::pow(static_cast<double>(d) * h, alphas[k]);
    }
  }

  const std::size_t m = field.total_points();
  std::vector<std::vector<std::size_t>> multi(m, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < m; ++a) {
    std::size_t rem = a;
    for (std::size_t k = n; k-- > 0;) {
      multi[a][k] = rem % field.shape[k];
      rem /= field.shape[k];
    }
  }

  const double inv_iota = 1.0 / iota;
  const bool sq = std::abs(inv_iota - 2.0) < 1e-14;
  double off_diag = 0.0;
  std::size_t off_count = 0;
  std::vector<std::size_t> sa(n), ta(n);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      double scale = 1.0;
      bool band = false;
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t da = multi[a][k] > multi[b][k]
                                   ? multi[a][k] - multi[b][k]
                                   : multi[b][k] - multi[a][k];
        if (da == 0) {
          band = true;
          break;
        }
        scale *= inv_rho[k][da];
      }
      if (band) continue;
      const double box = box_increment(field, multi[a], multi[b]);
      const double ratio = std::abs(box) * scale;
      const double exponent =
          beta * (sq ? ratio * ratio : std::pow(ratio, inv_iota));
      if (exponent > 709.0) {
        throw NumericalError(
            "compute_B_field: integrand overflow at pair (" +
            std::to_string(a) + ", " + std::to_string(b) +
            "); beta too large for this field");
      }
      off_diag += std::exp(exponent);
      ++off_count;
    }
  }
  const double cells = static_cast<double>(m) * static_cast<double>(m);
  grr::BEstimate est;
  // Every ordered pair sharing a coordinate on some axis sits in the
  // diagonal band and contributes Psi(0) = 1.
  const double band_pairs = cells - 2.0 * static_cast<double>(off_count);
  est.diagonal_mass = band_pairs / cells;
  est.value = est.diagonal_mass + 2.0 * off_diag / cells;
  return est;
}

double field_modulus_bound(std::span<const double> deltas, double B,
                           double beta, double iota,
                           std::span<const double> alphas,
                           const QuadratureOptions& quad) {
  check_shape_params(beta, iota);
  check_alphas(alphas);
  if (deltas.size() != alphas.size()) {
    throw std::invalid_argument("field_modulus_bound: arity mismatch");
  }
  const auto n = static_cast<double>(alphas.size());
  const double four_n = std::pow(4.0, n);
  const double b_floor = std::max(B, 1.0 / four_n + 1e-12);
  const double log_term = std::log(four_n * b_floor);
  double prefactor = std::pow(8.0, n) * std::pow(beta, -iota);
  for (double a : alphas) prefactor *= a;
  return prefactor *
         tensor_log_power_integral(deltas, alphas, iota, log_term, 2.0, quad)
             .value;
}

grr::HolderConstants field_holder_constants(double B, double beta, double iota,
                                            std::span<const double> alphas,
                                            const QuadratureOptions& quad) {
  check_shape_params(beta, iota);
  check_alphas(alphas);
  const auto n = static_cast<double>(alphas.size());
  const double three_pow = std::pow(3.0, std::max(iota - 1.0, 0.0));
  const double beta_pow = std::pow(beta, -iota);
  const double eight_n = std::pow(8.0, n);

  grr::HolderConstants hc;
  const double log_term = std::log(std::max(std::pow(4.0, n) * B, 1.0));
  hc.c_omega = eight_n * three_pow * beta_pow * std::pow(log_term, iota);

  const std::vector<double> ones(alphas.size(), 1.0);
  hc.v_integral =
      tensor_log_power_integral(ones, alphas, iota, 0.0, 1.0, quad).value;

  double alpha_prod = 1.0;
  for (double a : alphas) alpha_prod *= a;
  hc.c_d = eight_n * alpha_prod * std::pow(2.0, iota) * three_pow * beta_pow *
           (1.0 / alpha_prod + hc.v_integral);
  return hc;
}

double c_tilde(std::span<const double> alphas, double iota, double c_d) {
  check_alphas(alphas);
  if (!(iota > 0.0)) throw std::invalid_argument("iota must be > 0");
  if (!(c_d >= 0.0)) throw std::invalid_argument("c_d must be >= 0");
  double alpha_min = alphas[0];
  for (double a : alphas) alpha_min = std::min(alpha_min, a);
  // max of prod x_j^alpha_j (-log prod x_j)^iota: writing u_j = -log x_j,
  // maximize e^(-sum alpha_j u_j) (sum u_j)^iota; at fixed budget s = sum u_j
  // the exponent is smallest with all of s on the smallest alpha, and the
  // 1D problem e^(-alpha_min s) s^iota peaks at s = iota/alpha_min.
  return c_d * std::exp(-iota) * std::pow(iota / alpha_min, iota);
}

double c_tilde_grid_search(std::span<const double> alphas, double iota,
                           double c_d, std::size_t points_per_axis,
                           int refine_rounds) {
  check_alphas(alphas);
  if (!(iota > 0.0)) throw std::invalid_argument("iota must be > 0");
  if (points_per_axis < 8) {
    throw std::invalid_argument("c_tilde_grid_search: grid too coarse");
  }
  const std::size_t n = alphas.size();
  std::vector<double> lo(n, 0.0), hi(n, 1.0);
  std::vector<double> best_x(n, 1.0);
  double best = 0.0;

  for (int round = 0; round <= refine_rounds; ++round) {
    const std::size_t m = points_per_axis;
    // Per-axis tables of x, x^alpha and -log x on the current window.
    std::vector<std::vector<double>> xs(n), pow_a(n), neg_log(n);
    for (std::size_t k = 0; k < n; ++k) {
      xs[k].resize(m + 1);
      pow_a[k].resize(m + 1);
      neg_log[k].resize(m + 1);
      for (std::size_t i = 0; i <= m; ++i) {
        const double x =
            lo[k] + (hi[k] - lo[k]) * static_cast<double>(i) /
                        static_cast<double>(m);
        xs[k][i] = x;
        pow_a[k][i] = std::pow(x, alphas[k]);
        neg_log[k][i] = x > 0.0 ? -std::log(x) : 0.0;
      }
    }
    std::vector<std::size_t> idx(n, 0);
    std::vector<std::size_t> best_idx(n, 0);
    while (true) {
      double prod = 1.0, nls = 0.0;
      bool zero = false;
      for (std::size_t k = 0; k < n; ++k) {
        if (xs[k][idx[k]] == 0.0) {
          zero = true;
          break;
        }
        prod *= pow_a[k][idx[k]];
        nls += neg_log[k][idx[k]];
      }
      const double g = zero ? 0.0 : g_value(prod, nls, iota);
      if (g > best) {
        best = g;
        best_idx = idx;
        for (std::size_t k = 0; k < n; ++k) best_x[k] = xs[k][idx[k]];
      }
      std::size_t k = n;
      while (k > 0 && ++idx[k - 1] > m) {
        idx[k - 1] = 0;
        --k;
      }
      if (k == 0) break;
    }
    // Zoom to +-2 grid cells around the argmax for the next round.
    for (std::size_t k = 0; k < n; ++k) {
      const double spacing = (hi[k] - lo[k]) / static_cast<double>(m);
      lo[k] = std::max(0.0, best_x[k] - 2.0 * spacing);
      hi[k] = std::min(1.0, best_x[k] + 2.0 * spacing);
    }
  }
  return c_d * best;
}

ViolationReport verify_field_modulus(const SampleField& field, double c_omega,
                                     double c_d,
                                     std::span<const double> alphas,
                                     double iota) {
  field.validate();
  check_alphas(alphas);
  if (!(iota > 0.0)) throw std::invalid_argument("iota must be > 0");
  const std::size_t n = field.dims();
  if (alphas.size() != n) {
    throw std::invalid_argument("verify_field_modulus: arity mismatch");
  }

  std::vector<std::vector<double>> gap_pow(n), gap_log(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double h = 1.0 / static_cast<double>(field.shape[k] - 1);
    gap_pow[k].resize(field.shape[k]);
    gap_log[k].resize(field.shape[k]);
    for (std::size_t d = 1; d < field.shape[k]; ++d) {
      const double gap = static_cast<double>(d) * h;
      gap_pow[k][d] = std::pow(gap, alphas[k]);
      gap_log[k][d] = -std::log(gap);
    }
  }

  const std::size_t m = field.total_points();
  std::vector<std::vector<std::size_t>> multi(m, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < m; ++a) {
    std::size_t rem = a;
    for (std::size_t k = n; k-- > 0;) {
      multi[a][k] = rem % field.shape[k];
      rem /= field.shape[k];
    }
  }

  ViolationReport report;
  report.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      double prod_pow = 1.0, neg_log_sum = 0.0;
      bool band = false;
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t da = multi[a][k] > multi[b][k]
                                   ? multi[a][k] - multi[b][k]
                                   : multi[b][k] - multi[a][k];
        if (da == 0) {
          band = true;
          break;
        }
        prod_pow *= gap_pow[k][da];
        neg_log_sum += gap_log[k][da];
      }
      if (band) continue;
      const double observed = std::abs(box_increment(field, multi[a], multi[b]));
      const double log_pow =
          neg_log_sum > 0.0 ? std::pow(neg_log_sum, iota) : 0.0;
      const double bound = c_omega * prod_pow + c_d * prod_pow * log_pow;
      ++report.pairs_checked;
      if (observed > bound) ++report.violations;
      report.worst_margin = std::min(report.worst_margin, bound - observed);
    }
  }
  return report;
}

}  // namespace pathlab::fields
