#include "pathlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <type_traits>

#include "CLI11.hpp"
#include "json.hpp"

#include "pathlab/fields.hpp"
#include "pathlab/grr.hpp"
#include "pathlab/holder.hpp"
#include "pathlab/models.hpp"
#include "pathlab/moments.hpp"
#include "pathlab/parallel.hpp"
#include "pathlab/report.hpp"
#include "pathlab/rng.hpp"
#include "pathlab/stats.hpp"
#include "pathlab/tails.hpp"

namespace pathlab::cli {

namespace {

namespace fs = std::filesystem;
using report::fmt;

std::string bool_str(bool b) { return b ? "true" : "false"; }

void apply_defaults(RunConfig& c) {
  if (c.hurst.empty()) c.hurst = {0.5};
  if (c.hurst.size() == 1 && (c.model == "product" || c.model == "sheet")) {
    c.hurst.push_back(c.hurst[0]);
  }
  if (c.grid.empty()) {
    if (c.subcommand == "holder") {
      c.grid = {1025, 4097};
    } else if (c.model == "sheet") {
      c.grid = {33, 33};
    } else {
      c.grid = {257};
    }
  }
  if (c.model == "sheet" && c.grid.size() == 1) c.grid.push_back(c.grid[0]);
  if (c.alphas.empty()) c.alphas = {0.5};
  if (c.model == "sheet" && c.alphas.size() == 1) c.alphas.push_back(c.alphas[0]);
  if (c.epsilons.empty()) c.epsilons = {0.05, 0.1, 0.2};
  if (c.u_grid.empty()) {
    for (int i = 1; i <= 10; ++i) c.u_grid.push_back(0.5 * i);
  }
  const int n_dims = c.model == "sheet" ? 2 : 1;
  if (c.beta == 0.0) c.beta = 0.5 * grr::beta_max(c.c0, c.iota);
  if (c.beta0 == 0.0) c.beta0 = 0.5 * tails::beta0_max(c.c0, c.iota, n_dims);
}

// Admissibility checks shared by all subcommands; throws invalid_argument
// (exit code 2) before any sampling happens.
void validate(const RunConfig& c) {
  if (c.model != "fbm" && c.model != "wick" && c.model != "product" &&
      c.model != "sheet") {
    throw std::invalid_argument("unknown model '" + c.model + "'");
  }
  for (double h : c.hurst) {
    if (!(h > 0.0 && h < 1.0)) {
      throw std::invalid_argument("hurst must lie in (0, 1)");
    }
  }
  for (std::size_t g : c.grid) {
    if (g < 2) throw std::invalid_argument("grid needs >= 2 points per axis");
  }
  for (double a : c.alphas) {
    if (!(a > 0.0 && a <= 1.0)) {
      throw std::invalid_argument("alpha must lie in (0, 1]");
    }
  }
  if (!(c.iota > 0.0)) throw std::invalid_argument("iota must be > 0");
  if (!(c.c0 > 0.0)) throw std::invalid_argument("c0 must be > 0");
  const int n_dims = c.model == "sheet" ? 2 : 1;
  if (!(c.beta > 0.0 && c.beta < grr::beta_max(c.c0, c.iota))) {
    throw std::invalid_argument(
        "beta outside the admissible window (0, e*iota/c0^(1/iota))");
  }
  if (!(c.beta0 > 0.0 && c.beta0 < tails::beta0_max(c.c0, c.iota, n_dims))) {
    throw std::invalid_argument("beta0 outside the admissible window");
  }
  if (!(c.scale > 0.0)) throw std::invalid_argument("scale must be > 0");
}

models::ModelSpec make_model_spec(const RunConfig& c) {
  models::ModelSpec spec;
  spec.seed = c.seed;
  if (c.model == "fbm") {
    spec.kind = models::FbmSpec{c.hurst[0]};
  } else if (c.model == "wick") {
    spec.kind = models::WickSpec{c.order, c.hurst[0]};
  } else if (c.model == "product") {
    spec.kind = models::ProductSpec{models::FbmSpec{c.hurst[0]},
                                    models::FbmSpec{c.hurst[1]}};
  } else {
    spec.kind = models::FbmSheetSpec{c.hurst[0], c.hurst[1]};
  }
  return spec;
}

fs::path ensure_out_dir(const RunConfig& c) {
  const fs::path dir(c.out);
  fs::create_directories(dir);
  return dir;
}

void write_manifest(const fs::path& dir, const std::string& manifest_text) {
  report::write_text_file((dir / "manifest.txt").string(), manifest_text);
}

// Manifest schema: one key per CLI option, fixed order.  Keys the invocation
// actually set stay active; everything else is written as a comment carrying
// the resolved value, so the file documents the full parameter set while a
// --config rerun re-resolves defaults exactly as the original run did.
const std::vector<std::string> kManifestKeys = {
    "model",       "hurst",       "order", "grid",  "paths", "path-seeds",
    "seed",        "beta",        "beta0", "iota",  "c0",    "alpha",
    "epsilon",     "u",           "interval-lo",    "interval-hi",
    "base",        "scale",       "input", "out",   "threads"};

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

template <class T>
std::string join_values(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ' ';
    if constexpr (std::is_floating_point_v<T>) {
      out += fmt(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

std::string manifest_value(const RunConfig& c, const std::string& key) {
  if (key == "model") return quoted(c.model);
  if (key == "hurst") return join_values(c.hurst);
  if (key == "order") return std::to_string(c.order);
  if (key == "grid") return join_values(c.grid);
  if (key == "paths") return std::to_string(c.n_paths);
  if (key == "path-seeds") return std::to_string(c.n_seeds);
  if (key == "seed") return std::to_string(c.seed);
  if (key == "beta") return fmt(c.beta);
  if (key == "beta0") return fmt(c.beta0);
  if (key == "iota") return fmt(c.iota);
  if (key == "c0") return fmt(c.c0);
  if (key == "alpha") return join_values(c.alphas);
  if (key == "epsilon") return join_values(c.epsilons);
  if (key == "u") return join_values(c.u_grid);
  if (key == "interval-lo") return fmt(c.interval_lo);
  if (key == "interval-hi") return fmt(c.interval_hi);
  if (key == "base") return fmt(c.base_point);
  if (key == "scale") return fmt(c.scale);
  if (key == "input") return quoted(c.input);
  if (key == "out") return quoted(c.out);
  if (key == "threads") return std::to_string(c.threads);
  throw std::logic_error("unknown manifest key " + key);
}

std::string build_manifest(const RunConfig& c,
                           const std::set<std::string>& user_set) {
  std::string text = "# manifest: " + c.subcommand + "\n";
  text +=
      "# Active keys were set by the invocation; commented keys show the\n"
      "# resolved defaults.  Feed this file back via --config (flags win on\n"
      "# conflict) to reproduce the run's data files byte for byte.\n";
  text += "[" + c.subcommand + "]\n";
  for (const auto& key : kManifestKeys) {
    const std::string line = key + "=" + manifest_value(c, key) + "\n";
    text += user_set.count(key) ? line : "# " + line;
  }
  return text;
}

int run_simulate(const RunConfig& c, const fs::path& dir) {
  const models::ModelSpec spec = make_model_spec(c);
  if (c.model == "sheet") {
    const models::FieldModel model(std::get<models::FbmSheetSpec>(spec.kind),
                                   c.grid[0], c.grid[1]);
    report::write_text_file((dir / "field.csv").string(),
                            report::field_csv(model.sample(c.seed)));
  } else {
    const models::PathModel model(spec, c.grid[0]);
    report::write_text_file((dir / "path.csv").string(),
                            report::path_csv(model.sample(c.seed)));
  }
  return kExitOk;
}

int run_moments(const RunConfig& c, const fs::path& dir,
                bool explicit_params) {
  if (c.model == "sheet") {
    throw std::invalid_argument("moments: scalar models only");
  }
  const models::PathModel model(make_model_spec(c), c.grid[0]);
  const std::size_t n = c.grid[0];

  // Pool increments per path at a dyadic set of lags; lag = 1 grid step is
  // the headline estimate, the rest feed the max-over-lags diagnostics.
  std::vector<std::size_t> lag_steps{1};
  while (lag_steps.back() * 2 <= (n - 1) / 4) {
    lag_steps.push_back(lag_steps.back() * 2);
  }
  std::vector<std::vector<double>> pooled(lag_steps.size());
  std::vector<SamplePath> paths(c.n_paths);
  parallel_for_index(c.n_paths, c.threads, [&](std::size_t i) {
    paths[i] = model.sample(child_seed(c.seed, i));
  });
  for (const auto& path : paths) {
    for (std::size_t li = 0; li < lag_steps.size(); ++li) {
      const std::size_t d = lag_steps[li];
      for (std::size_t s = 0; s + d < n; s += d) {
        pooled[li].push_back(path.values[s + d] - path.values[s]);
      }
    }
  }

  std::vector<double> ps;
  for (int p = 2; p <= 8; ++p) ps.push_back(p);
  std::vector<std::pair<double, double>> ratios;
  for (double p : ps) {
    ratios.emplace_back(p, moments::empirical_moment_ratio(pooled[0], p));
  }
  const moments::HyperFit fit = moments::fit_hyper_params(ratios);

  // Bound column: explicit (c0, iota) if the user supplied them, otherwise
  // the fitted-iota envelope that clears every observed ratio.
  double bound_c0 = c.c0, bound_iota = c.iota;
  if (!explicit_params) {
    bound_iota = fit.params.iota;
    double env = 0.0;
    for (const auto& [p, r] : ratios) {
      env = std::max(env, std::pow(r / std::pow(p, p * bound_iota), 1.0 / p));
    }
    bound_c0 = env * (1.0 + 1e-12);
  }

  bool all_pass = true;
  std::vector<std::vector<std::string>> rows;
  for (const auto& [p, r] : ratios) {
    const double bound = std::pow(bound_c0, p) * std::pow(p, p * bound_iota);
    const bool pass = r <= bound;
    all_pass = all_pass && pass;
    rows.push_back({fmt(p), fmt(r), fmt(bound), bool_str(pass)});
  }
  const std::vector<std::string> header{"p", "ratio", "bound", "pass"};
  report::write_text_file((dir / "moments.csv").string(),
                          report::table_csv(header, rows));

  std::vector<std::pair<std::string, std::string>> kv{
      {"c0_hat", fmt(fit.params.c0)},
      {"iota_hat", fmt(fit.params.iota)},
      {"residual_rms", fmt(fit.residual_rms)},
      {"max_abs_residual", fmt(fit.max_abs_residual)},
      {"r_squared", fmt(fit.r_squared)},
      {"bound_c0", fmt(bound_c0)},
      {"bound_iota", fmt(bound_iota)},
      {"increment_samples", fmt(static_cast<double>(pooled[0].size()))},
  };
  // Scale-dependence guard: worst ratio over the dyadic lag set, per p.
  for (double p : ps) {
    double worst = 0.0;
    for (const auto& samples : pooled) {
      worst = std::max(worst, moments::empirical_moment_ratio(samples, p));
    }
    kv.emplace_back("max_over_lags_p" + std::to_string(static_cast<int>(p)),
                    fmt(worst));
  }
  report::write_text_file((dir / "moments_summary.txt").string(),
                          report::key_value_record(kv));
  return all_pass ? kExitOk : kExitVerificationFail;
}

int run_grr(const RunConfig& c, const fs::path& dir) {
  SamplePath path;
  if (!c.input.empty()) {
    path = report::read_path_csv(c.input);
  } else {
    if (c.model == "sheet") {
      throw std::invalid_argument("grr: scalar models only (see field)");
    }
    path = models::PathModel(make_model_spec(c), c.grid[0]).sample(c.seed);
  }
  if (c.scale != 1.0) {
    for (double& v : path.values) v *= c.scale;
  }

  grr::GrrConfig grr_cfg{c.beta, c.iota, c.alphas[0], {}};
  grr::validate_config(grr_cfg, c.c0);
  const grr::GrrResult result = grr::analyze(path, grr_cfg);
  const ViolationReport check =
      grr::verify_modulus(path, result.c_omega, result.c_d, c.alphas[0], c.iota);
  const double limsup =
      grr::limsup_ratio(path, c.alphas[0], c.iota);

  const std::vector<std::pair<std::string, std::string>> kv{
      {"B", fmt(result.B)},
      {"C_omega", fmt(result.c_omega)},
      {"C_d", fmt(result.c_d)},
      {"beta", fmt(c.beta)},
      {"iota", fmt(c.iota)},
      {"alpha", fmt(c.alphas[0])},
      {"v_integral", fmt(result.v_integral)},
      {"diagonal_mass", fmt(result.diagonal_mass)},
      {"pairs_checked", std::to_string(check.pairs_checked)},
      {"violations", std::to_string(check.violations)},
      {"worst_margin", fmt(check.worst_margin)},
      {"limsup_ratio", fmt(limsup)},
      {"limsup_within_C_d", bool_str(limsup <= result.c_d)},
  };
  report::write_text_file((dir / "grr_report.txt").string(),
                          report::key_value_record(kv));

  std::vector<std::vector<std::string>> rows;
  for (const auto& [delta, bound] : result.modulus_samples) {
    rows.push_back({fmt(delta), fmt(bound)});
  }
  const std::vector<std::string> header{"delta", "bound"};
  report::write_text_file((dir / "modulus.csv").string(),
                          report::table_csv(header, rows));
  return check.violations == 0 ? kExitOk : kExitVerificationFail;
}

int run_field(const RunConfig& c, const fs::path& dir) {
  if (c.model != "sheet") {
    throw std::invalid_argument("field: requires --model sheet");
  }
  if (c.grid[0] > 64 || c.grid[1] > 64) {
    throw std::invalid_argument(
        "field: analysis grid capped at 64 points per axis (O(N^4) sweep)");
  }
  const models::ModelSpec spec = make_model_spec(c);
  const models::FieldModel model(std::get<models::FbmSheetSpec>(spec.kind),
                                 c.grid[0], c.grid[1]);
  const SampleField field = model.sample(c.seed);

  const grr::BEstimate b =
      fields::compute_B_field(field, c.alphas, c.beta, c.iota);
  const grr::HolderConstants hc =
      fields::field_holder_constants(b.value, c.beta, c.iota, c.alphas);
  const double c_tilde_val = fields::c_tilde(c.alphas, c.iota, hc.c_d);
  const ViolationReport check = fields::verify_field_modulus(
      field, hc.c_omega, hc.c_d, c.alphas, c.iota);

  std::vector<std::pair<std::string, std::string>> kv{
      {"B", fmt(b.value)},
      {"C_omega", fmt(hc.c_omega)},
      {"C_d", fmt(hc.c_d)},
      {"c_tilde", fmt(c_tilde_val)},
      {"beta", fmt(c.beta)},
      {"iota", fmt(c.iota)},
  };
  for (std::size_t k = 0; k < c.alphas.size(); ++k) {
    kv.emplace_back("alpha" + std::to_string(k + 1), fmt(c.alphas[k]));
  }
  kv.emplace_back("v_integral", fmt(hc.v_integral));
  kv.emplace_back("diagonal_mass", fmt(b.diagonal_mass));
  kv.emplace_back("pairs_checked", std::to_string(check.pairs_checked));
  kv.emplace_back("violations", std::to_string(check.violations));
  kv.emplace_back("worst_margin", fmt(check.worst_margin));
  report::write_text_file((dir / "field_report.txt").string(),
                          report::key_value_record(kv));
  return check.violations == 0 ? kExitOk : kExitVerificationFail;
}

int run_tail(const RunConfig& c, const fs::path& dir) {
  if (c.model == "sheet") {
    throw std::invalid_argument("tail: scalar models only");
  }
  const models::PathModel model(make_model_spec(c), c.grid[0]);
  tails::TailExperimentConfig tail_cfg;
  tail_cfg.alpha = c.alphas[0];
  tail_cfg.beta = c.beta;
  tail_cfg.beta0 = c.beta0;
  tail_cfg.iota = c.iota;
  tail_cfg.c0 = c.c0;
  tail_cfg.path_scale = c.scale;
  tail_cfg.threads = c.threads;
  const tails::TailCurve curve =
      tails::sup_tail_experiment(model, c.interval_lo, c.interval_hi,
                                 c.base_point, c.u_grid, c.n_paths, tail_cfg,
                                 c.seed);

  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < curve.u.size(); ++i) {
    rows.push_back({fmt(curve.u[i]), fmt(curve.empirical[i]),
                    fmt(curve.bound[i]), bool_str(curve.pass[i] != 0)});
  }
  const std::vector<std::string> header{"u", "empirical_prob", "bound", "pass"};
  report::write_text_file((dir / "tail.csv").string(),
                          report::table_csv(header, rows));

  nlohmann::ordered_json meta;
  meta["model"] = c.model;
  meta["hurst"] = c.hurst;
  meta["order"] = c.order;
  meta["grid"] = c.grid[0];
  meta["n_paths"] = curve.n_paths;
  meta["seed"] = c.seed;
  meta["alpha"] = tail_cfg.alpha;
  meta["beta"] = tail_cfg.beta;
  meta["beta0"] = tail_cfg.beta0;
  meta["iota"] = tail_cfg.iota;
  meta["c0"] = tail_cfg.c0;
  meta["scale"] = tail_cfg.path_scale;
  meta["interval"] = {c.interval_lo, c.interval_hi};
  meta["base_point"] = c.base_point;
  meta["C_beta0"] = curve.c_beta0;
  meta["kappa"] = curve.kappa;
  meta["C_d"] = curve.c_d;
  meta["additive_const"] = curve.additive_const;
  meta["additive_const_stated"] = curve.additive_const_stated;
  meta["B_mean"] = curve.b_mean;
  meta["all_pass"] = curve.all_pass;
  report::write_text_file((dir / "tail_meta.json").string(),
                          meta.dump(2) + "\n");
  return curve.all_pass ? kExitOk : kExitVerificationFail;
}

int run_holder(const RunConfig& c, const fs::path& dir, bool alpha_supplied) {
  if (c.model == "sheet") {
    throw std::invalid_argument("holder: scalar models only");
  }
  holder::IffConfig iff_cfg;
  iff_cfg.epsilons = c.epsilons;
  iff_cfg.n_paths_moment = c.n_paths;
  iff_cfg.n_points_moment = c.grid[0];
  iff_cfg.n_seeds_path = c.n_seeds;
  iff_cfg.n_points_path = c.grid.size() > 1 ? c.grid[1] : 4097;
  iff_cfg.claimed_alpha = alpha_supplied ? c.alphas[0] : 0.0;
  iff_cfg.seed = c.seed;
  iff_cfg.threads = c.threads;
  // Default dyadic lags 2^-3..2^-10 need (N-1) divisible by 2^10; shrink the
  // window for coarser grids.
  iff_cfg.moment_ks.clear();
  for (int k = 3; k <= 10; ++k) {
    if ((iff_cfg.n_points_moment - 1) % (std::size_t{1} << k) == 0) {
      iff_cfg.moment_ks.push_back(k);
    }
  }
  const holder::IffReport rep = holder::iff_report(make_model_spec(c), iff_cfg);

  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < rep.moment_fit.log_lag.size(); ++i) {
    rows.push_back({fmt(std::exp(rep.moment_fit.log_lag[i])),
                    fmt(std::exp(rep.moment_fit.log_m2[i]))});
  }
  const std::vector<std::string> header{"lag", "m2"};
  report::write_text_file((dir / "holder_lags.csv").string(),
                          report::table_csv(header, rows));

  std::vector<std::pair<std::string, std::string>> kv{
      {"alpha_moment", fmt(rep.alpha_moment)},
      {"alpha_path_median", fmt(rep.alpha_path_median)},
      {"alpha_reference", fmt(rep.alpha_reference)},
      {"slope", fmt(rep.moment_fit.slope)},
      {"slope_stderr", fmt(rep.moment_fit.slope_stderr)},
      {"moment_ok", bool_str(rep.moment_ok)},
      {"path_ok", bool_str(rep.path_ok)},
      {"directions_agree", bool_str(rep.directions_agree)},
      {"pass", bool_str(rep.pass)},
  };
  for (const auto& check : rep.epsilon_checks) {
    char eps_buf[32];
    std::snprintf(eps_buf, sizeof(eps_buf), "%g", check.epsilon);
    const std::string tag = std::string("epsilon_") + eps_buf;
    kv.emplace_back(tag + "_violations", std::to_string(check.violations));
    kv.emplace_back(tag + "_mean_c", fmt(check.mean_c_eps));
    kv.emplace_back(tag + "_max_c", fmt(check.max_c_eps));
  }
  report::write_text_file((dir / "holder_report.txt").string(),
                          report::key_value_record(kv));
  return rep.pass ? kExitOk : kExitVerificationFail;
}

struct SubFlags {
  bool explicit_moment_params = false;
  bool alpha_supplied = false;
};

int dispatch(const RunConfig& c, const fs::path& dir, const SubFlags& flags) {
  if (c.subcommand == "simulate") return run_simulate(c, dir);
  if (c.subcommand == "moments") {
    return run_moments(c, dir, flags.explicit_moment_params);
  }
  if (c.subcommand == "grr") return run_grr(c, dir);
  if (c.subcommand == "field") return run_field(c, dir);
  if (c.subcommand == "tail") return run_tail(c, dir);
  if (c.subcommand == "holder") return run_holder(c, dir, flags.alpha_supplied);
  throw std::invalid_argument("unknown subcommand '" + c.subcommand + "'");
}

int run_impl(RunConfig config,
             const std::optional<std::set<std::string>>& user_set,
             std::string manifest_text, const SubFlags& flags) {
  try {
    apply_defaults(config);
    validate(config);
    if (user_set) manifest_text = build_manifest(config, *user_set);
    const fs::path dir = ensure_out_dir(config);
    write_manifest(dir, manifest_text);
    return dispatch(config, dir, flags);
  } catch (const NumericalError& err) {
    std::fprintf(stderr, "numerical error: %s\n", err.what());
    return kExitNumericalError;
  } catch (const std::invalid_argument& err) {
    std::fprintf(stderr, "config error: %s\n", err.what());
    return kExitConfigError;
  }
}

void attach_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--model", c.model, "fbm | wick | product | sheet");
  sub->add_option("--hurst", c.hurst, "Hurst index (repeat for 2-factor models)");
  sub->add_option("--order", c.order, "chaos order for the wick model");
  sub->add_option("--grid", c.grid, "grid points (repeat per axis / stage)");
  sub->add_option("--paths", c.n_paths, "Monte Carlo path count");
  sub->add_option("--path-seeds", c.n_seeds, "path-direction seed count");
  sub->add_option("--seed", c.seed, "master seed; all randomness derives from it");
  sub->add_option("--beta", c.beta, "exponential rate (0 = half the window)");
  sub->add_option("--beta0", c.beta0, "tail rate (0 = half the window)");
  sub->add_option("--iota", c.iota, "moment growth exponent");
  sub->add_option("--c0", c.c0, "moment growth base");
  sub->add_option("--alpha", c.alphas, "Holder exponent (repeat per axis)");
  sub->add_option("--epsilon", c.epsilons, "epsilon grid (repeatable)");
  sub->add_option("--u", c.u_grid, "tail u grid (repeatable)");
  sub->add_option("--interval-lo", c.interval_lo, "interval start (tail)");
  sub->add_option("--interval-hi", c.interval_hi, "interval end (tail)");
  sub->add_option("--base", c.base_point, "base point s (tail)");
  sub->add_option("--scale", c.scale, "multiply sampled paths by this factor");
  sub->add_option("--input", c.input, "path CSV to analyze instead of simulating");
  sub->add_option("--out", c.out, "output directory");
  sub->add_option("--threads", c.threads, "worker threads (0 = all cores)");
}

}  // namespace

int run(RunConfig config, const std::string& manifest_text) {
  return run_impl(std::move(config), std::nullopt, manifest_text, SubFlags{});
}

int run(int argc, const char* const* argv) {
  CLI::App app{"sample-path regularity laboratory"};
  app.require_subcommand(1);
  // Options unmatched inside a subcommand climb to the main app, so
  // `pathlab <sub> --config <file>` reaches the app-level config option.
  app.fallthrough();
  app.set_config("--config", "",
                 "read options from a manifest file (flags win on conflict)");
  app.allow_config_extras(CLI::config_extras_mode::ignore_all);
  RunConfig config;

  const std::vector<std::string> names{"simulate", "moments", "grr",
                                       "field",    "tail",    "holder"};
  const std::vector<std::string> descriptions{
      "emit one simulated path or field as CSV",
      "hypercontractivity moment-ratio fit",
      "B, modulus bound, Holder constants, pathwise verification",
      "rectangular-increment field suite",
      "supremum tail curve vs the analytic bound",
      "both directions of the Holder characterization",
  };
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < names.size(); ++i) {
    CLI::App* sub = app.add_subcommand(names[i], descriptions[i]);
    attach_options(sub, config);
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    config.subcommand = names[i];
    std::set<std::string> user_set;
    for (const auto& key : kManifestKeys) {
      if (subs[i]->count("--" + key) > 0) user_set.insert(key);
    }
    SubFlags flags;
    flags.explicit_moment_params =
        user_set.count("c0") > 0 || user_set.count("iota") > 0;
    flags.alpha_supplied = user_set.count("alpha") > 0;
    return run_impl(std::move(config), user_set, "", flags);
  }
  return kExitConfigError;
}

}  // namespace pathlab::cli
