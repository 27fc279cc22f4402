#include "pathlab/quadrature.hpp"

#include <cmath>
#include <vector>

namespace pathlab {

namespace {

void check_common(double iota, double a, double b) {
  if (!(iota > 0.0)) throw std::invalid_argument("quadrature: iota must be > 0");
  if (!(a >= 0.0)) throw std::invalid_argument("quadrature: a must be >= 0");
  if (!(b > 0.0)) throw std::invalid_argument("quadrature: b must be > 0");
}

void check_axis(double delta, double alpha) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("quadrature: delta must lie in (0, 1]");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("quadrature: alpha must lie in (0, 1]");
  }
}

// Depth below log(delta) after which e^(alpha x) suppresses the integrand
// beyond any tolerance we drive the doubling loop to.
double truncation_span(double alpha, double iota) {
  return (40.0 + 10.0 * std::max(iota, 1.0)) / alpha;
}

// Midpoint pass over the tensor grid with m nodes per axis.  Axis k
// contributes weight e^(alpha_k x) dx; the axes couple only through the
// shared factor (a + b sum(-x_k))^iota, evaluated once per cell.
double tensor_pass(std::span<const double> deltas, std::span<const double> alphas,
                   double iota, double a, double b, int m) {
  const std::size_t n = deltas.size();
  std::vector<std::vector<double>> weight(n), neg_x(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double hi = std::log(deltas[k]);
    const double lo = hi - truncation_span(alphas[k], iota);
    const double h = (hi - lo) / m;
    weight[k].resize(m);
    neg_x[k].resize(m);
    for (int i = 0; i < m; ++i) {
      const double x = lo + (i + 0.5) * h;
      weight[k][i] = std::exp(alphas[k] * x) * h;
      neg_x[k][i] = -x;
    }
  }
  // Odometer over the product grid, carrying partial products/sums.
  std::vector<int> idx(n, 0);
  std::vector<double> w_part(n + 1, 1.0), s_part(n + 1, 0.0);
  auto refresh = [&](std::size_t from) {
    for (std::size_t k = from; k < n; ++k) {
      w_part[k + 1] = w_part[k] * weight[k][idx[k]];
      s_part[k + 1] = s_part[k] + neg_x[k][idx[k]];
    }
  };
  refresh(0);
  double total = 0.0;
  while (true) {
    total += w_part[n] * std::pow(a + b * s_part[n], iota);
    std::size_t k = n;
    while (k > 0 && ++idx[k - 1] == m) {
      idx[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
    refresh(k - 1);
  }
  return total;
}

double cells_for(int m, std::size_t n) {
  double c = 1.0;
  for (std::size_t k = 0; k < n; ++k) c *= m;
  return c;
}

QuadratureResult drive_doubling(std::span<const double> deltas,
                                std::span<const double> alphas, double iota,
                                double a, double b,
                                const QuadratureOptions& opts) {
  const std::size_t n = deltas.size();
  int m = opts.initial_nodes;
  // Leave room for at least two doublings within the cell budget.
  while (m > 16 && cells_for(2 * m, n) > opts.max_cells) m /= 2;

  QuadratureResult res;
  double prev = tensor_pass(deltas, alphas, iota, a, b, m);
  for (int round = 0; round < opts.max_doublings; ++round) {
    if (cells_for(2 * m, n) > opts.max_cells) break;
    m *= 2;
    const double cur = tensor_pass(deltas, alphas, iota, a, b, m);
    const double denom = std::max(std::abs(cur), 1e-300);
    res.last_rel_change = std::abs(cur - prev) / denom;
    res.value = cur;
    res.nodes_per_axis = m;
    prev = cur;
    if (res.last_rel_change <= opts.target_rel) {
      res.met_target = true;
      return res;
    }
  }
  if (res.nodes_per_axis == 0 || res.last_rel_change > opts.accept_rel) {
    throw NumericalError(
        "quadrature did not converge: relative change " +
        std::to_string(res.last_rel_change) + " at " +
        std::to_string(m) + " nodes per axis");
  }
  return res;
}

}  // namespace

QuadratureResult weighted_log_power_integral(double delta, double alpha,
                                             double iota, double a, double b,
                                             const QuadratureOptions& opts) {
  check_common(iota, a, b);
  check_axis(delta, alpha);
  const double d[1] = {delta};
  const double al[1] = {alpha};
  return drive_doubling(d, al, iota, a, b, opts);
}

QuadratureResult tensor_log_power_integral(std::span<const double> deltas,
                                           std::span<const double> alphas,
                                           double iota, double a, double b,
                                           const QuadratureOptions& opts) {
  check_common(iota, a, b);
  if (deltas.empty() || deltas.size() != alphas.size()) {
    throw std::invalid_argument("quadrature: deltas/alphas size mismatch");
  }
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    check_axis(deltas[k], alphas[k]);
  }
  return drive_doubling(deltas, alphas, iota, a, b, opts);
}

}  // namespace pathlab
