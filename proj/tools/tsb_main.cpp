// Command-line front end: estimator runs (JSON reports), coupled level-decay
// tables and algorithm-comparison region grids (CSV), raw joint samples, and
// a built-in invariant check suite.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tsb/config.hpp"
#include "tsb/cost_models.hpp"
#include "tsb/estimators.hpp"
#include "tsb/model.hpp"
#include "tsb/payoffs.hpp"
#include "tsb/quadrature.hpp"
#include "tsb/rng.hpp"
#include "tsb/sb_core.hpp"
#include "tsb/special_functions.hpp"
#include "tsb/stable.hpp"

namespace {

using nlohmann::json;

// Options shared by every subcommand; sentinel defaults mean "not supplied",
// so config-file values win unless the flag is present.
struct CommonFlags {
  std::string config_path;
  std::string preset;
  std::string out;
  std::int64_t seed = -1;
  int threads = 0;
  double epsilon = -1.0;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "Run configuration file (INI-style or JSON)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--preset", flags.preset,
                  "Model preset (usdjpy_v1, usdjpy_v2, mcd, bix, sox); overrides the config model");
  cmd->add_option("--seed", flags.seed, "Master seed (overrides the config)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--threads", flags.threads, "Worker cap (overrides the config)");
  cmd->add_option("--epsilon", flags.epsilon,
                  "Target RMSE; switches the run to accuracy mode (overrides the config)");
  cmd->add_option("--out", flags.out, "Output file (default: stdout)");
}

tsb::RunConfig resolve_config(const CommonFlags& flags) {
  tsb::RunConfig config;
  if (!flags.config_path.empty()) config = tsb::load_config_file(flags.config_path);
  if (!flags.preset.empty()) config.preset = flags.preset;
  if (flags.seed >= 0) config.seed = static_cast<std::uint64_t>(flags.seed);
  if (flags.threads != 0) config.threads = flags.threads;
  if (flags.epsilon >= 0.0) {
    config.has_epsilon = true;
    config.epsilon = flags.epsilon;
    config.has_fixed = false;  // the flag re-targets a fixed-mode config
  }
  if (!flags.out.empty()) config.out = flags.out;
  return config;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + out_path + "'");
  out << text;
  if (!out.flush()) throw std::runtime_error("failed writing output file '" + out_path + "'");
}

std::string fmt(double v, const char* spec = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

// ---------------------------------------------------------------------------
// estimate / mlmc

int cmd_estimate(const CommonFlags& flags, bool force_mlmc) {
  tsb::RunConfig config = resolve_config(flags);
  if (force_mlmc) config.estimator = "mlmc";
  tsb::validate_config(config);
  const tsb::TemperedStableModel model = tsb::build_model(config);
  const tsb::PayoffSpec payoff = tsb::build_payoff(config);
  const tsb::EstimatorOptions options = tsb::build_estimator_options(config);
  const tsb::EstimateReport report = config.estimator == "mlmc"
                                         ? tsb::mlmc_estimate(model, payoff, options)
                                         : tsb::mc_estimate(model, payoff, options);
  write_output(tsb::report_to_json(report) + "\n", config.out);
  return 0;
}

// ---------------------------------------------------------------------------
// convergence

int cmd_convergence(const CommonFlags& flags, int max_level, long long samples) {
  if (max_level < 2) throw std::invalid_argument("convergence: max level must be at least 2");
  if (samples < 2) throw std::invalid_argument("convergence: samples must be at least 2");
  tsb::RunConfig config = resolve_config(flags);
  const tsb::TemperedStableModel model = tsb::build_model(config);
  const tsb::PayoffSpec payoff = tsb::build_payoff(config);
  const auto stats =
      tsb::level_diagnostics(model, payoff, max_level, samples, config.seed, config.threads);

  // Guide lines from the payoff-class decay rates, anchored at the middle of
  // the measured grid so observed and predicted curves overlay on log plots.
  const tsb::PayoffClass cls = tsb::payoff_class(payoff);
  const double bias_rate = tsb::class_rate(cls, model);
  const double var_rate =
      cls == tsb::PayoffClass::lipschitz ? model.eta_p(2.0) : bias_rate;
  const std::size_t mid = (stats.size() - 1) / 2;
  const double bias_anchor = std::fabs(stats[mid].mean);
  const double var_anchor = stats[mid].variance;

  std::ostringstream csv;
  csv << "level,abs_mean,variance,samples,cost_units,predicted_bias,predicted_variance\n";
  for (const auto& row : stats) {
    const double shift = static_cast<double>(row.level - stats[mid].level);
    csv << row.level << ',' << fmt(std::fabs(row.mean)) << ',' << fmt(row.variance) << ','
        << row.samples << ',' << fmt(row.cost_units) << ','
        << fmt(bias_anchor * std::pow(bias_rate, -shift)) << ','
        << fmt(var_anchor * std::pow(var_rate, -shift)) << '\n';
  }
  write_output(csv.str(), config.out);
  return 0;
}

// ---------------------------------------------------------------------------
// compare

json verdict_to_json(const tsb::ComparisonVerdict& verdict) {
  json j;
  j["preferred"] = verdict.preferred;
  j["regime"] = verdict.regime;
  json values = json::object();
  for (const auto& [key, value] : verdict.criterion_values) {
    if (std::isinf(value)) {
      values[key] = value > 0 ? "inf" : "-inf";
    } else {
      values[key] = value;
    }
  }
  j["criterion_values"] = values;
  return j;
}

int cmd_compare(const CommonFlags& flags, double accuracy, const std::string& grid,
                const std::string& grid_out, int grid_size, double grid_tmax) {
  tsb::RunConfig config = resolve_config(flags);
  const tsb::TemperedStableModel model = tsb::build_model(config);

  json j;
  j["sb_vs_tsb"] = verdict_to_json(tsb::sb_vs_tsb(model));
  j["sbg_vs_tsb"] = verdict_to_json(tsb::sbg_vs_tsb(model, model.params().horizon, accuracy));
  j["horizon"] = model.params().horizon;
  j["accuracy"] = accuracy;
  write_output(j.dump(2) + "\n", config.out);

  if (grid.empty()) return 0;
  if (grid_out.empty()) throw std::invalid_argument("compare: --grid-out is required with --grid");
  if (grid_size < 2) throw std::invalid_argument("compare: --grid-size must be at least 2");

  std::ostringstream csv;
  if (grid == "sb") {
    // Square grid over (rho, alpha): symmetric tail indices, intensity ratio
    // rho = c-/c+, unit tempering.  Cell centres avoid the axes.
    csv << "rho,alpha,preferred\n";
    for (int i = 0; i < grid_size; ++i) {
      const double alpha = 2.0 * (i + 0.5) / grid_size;
      for (int jj = 0; jj < grid_size; ++jj) {
        const double rho = (jj + 0.5) / grid_size;
        tsb::ModelParams cell;
        cell.c_plus = 1.0;
        cell.c_minus = rho;
        cell.alpha_plus = alpha;
        cell.alpha_minus = alpha;
        cell.lambda_plus = 1.0;
        cell.lambda_minus = 1.0;
        cell.horizon = 1.0;
        const tsb::TemperedStableModel m(cell);
        csv << fmt(rho) << ',' << fmt(alpha) << ',' << tsb::sb_vs_tsb(m).preferred << '\n';
      }
    }
  } else if (grid == "sbg") {
    // Grid over (horizon, alpha in (0,1)) with the configured model's other
    // parameters; cells use the default index enlargement.
    csv << "horizon,alpha,preferred\n";
    for (int i = 0; i < grid_size; ++i) {
      const double alpha = (i + 0.5) / grid_size;
      tsb::ModelParams cell = model.params();
      cell.alpha_plus = alpha;
      cell.alpha_minus = alpha;
      const tsb::TemperedStableModel m(cell);
      for (int jj = 0; jj < grid_size; ++jj) {
        const double horizon = grid_tmax * (jj + 0.5) / grid_size;
        csv << fmt(horizon) << ',' << fmt(alpha) << ','
            << tsb::sbg_vs_tsb(m, horizon, accuracy).preferred << '\n';
      }
    }
  } else {
    throw std::invalid_argument("compare: unknown grid '" + grid + "' (expected sb or sbg)");
  }
  write_output(csv.str(), grid_out);
  return 0;
}

// ---------------------------------------------------------------------------
// sample

int cmd_sample(const CommonFlags& flags, int levels, long long count) {
  tsb::RunConfig config = resolve_config(flags);
  if (levels <= 0) levels = config.has_fixed ? config.levels : 10;
  if (levels < 1) throw std::invalid_argument("sample: levels must be at least 1");
  if (count < 1) throw std::invalid_argument("sample: count must be at least 1");
  const tsb::TemperedStableModel model = tsb::build_model(config);

  tsb::ChiSampler sampler(model);
  const tsb::PhiloxStream master(config.seed);
  const auto level_key = static_cast<std::uint64_t>(levels) << 40;

  std::ostringstream csv;
  csv << "x_t,sup,tau,y_plus,y_minus,log_weight,level\n";
  for (long long i = 0; i < count; ++i) {
    tsb::PhiloxStream rng = master.substream(level_key + static_cast<std::uint64_t>(i));
    const tsb::ExtremaSample s = sampler.sample(levels, rng);
    csv << fmt(s.x_t, "%.17g") << ',' << fmt(s.sup, "%.17g") << ',' << fmt(s.tau, "%.17g")
        << ',' << fmt(s.y_plus, "%.17g") << ',' << fmt(s.y_minus, "%.17g") << ','
        << fmt(s.log_weight, "%.17g") << ',' << s.level << '\n';
  }
  write_output(csv.str(), config.out);
  return 0;
}

// ---------------------------------------------------------------------------
// validate

double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

double ks_two_sample(std::vector<double> xs, std::vector<double> ys) {
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < xs.size() && j < ys.size()) {
    if (xs[i] <= ys[j]) {
      ++i;
    } else {
      ++j;
    }
    d = std::max(d, std::fabs(static_cast<double>(i) / xs.size() -
                              static_cast<double>(j) / ys.size()));
  }
  return d;
}

// Kolmogorov tail Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_tail(double lambda) {
  if (lambda < 1e-3) return 1.0;
  double q = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = 2.0 * std::exp(-2.0 * k * k * lambda * lambda);
    q += (k % 2 == 1) ? term : -term;
    if (term < 1e-16) break;
  }
  return std::min(1.0, std::max(0.0, q));
}

struct CheckOutcome {
  std::string name;
  bool pass = false;
  std::string detail;
};

// e^{-y} - 1 + y without cancellation for small y.
double expm1_compensated(double y) {
  if (std::fabs(y) < 1e-4) {
    return y * y / 2.0 * (1.0 - y / 3.0 + y * y / 12.0 - y * y * y / 60.0);
  }
  return std::expm1(-y) + y;
}

namespace quadrature = tsb::quadrature;

// Quadrature oracle for C_{a,r} = int_0^inf (e^{-rx} - 1 + rx 1{x<1}) x^{-a-1} dx.
double c_const_quadrature(double a, double r) {
  quadrature::Options opt;
  opt.rel_tol = 1e-11;
  opt.abs_tol = 1e-13;
  auto near = [&](double x) { return expm1_compensated(r * x) * std::pow(x, -a - 1.0); };
  auto far = [&](double x) { return std::exp(-r * x) * std::pow(x, -a - 1.0); };
  return quadrature::integrate_power_singularity(near, 1.0, a - 1.0, opt) +
         quadrature::integrate_to_inf(far, 1.0, opt) - 1.0 / a;
}

CheckOutcome check_special_functions() {
  CheckOutcome out{"special-function closed forms vs quadrature", false, ""};
  double worst = 0.0;
  for (const auto& [a, r] : std::vector<std::pair<double, double>>{
           {0.5, 2.0}, {0.66, 6.5022}, {1.0, 3.0}, {1.5, 1.932}}) {
    const double closed = tsb::c_const(a, r);
    const double oracle = c_const_quadrature(a, r);
    worst = std::max(worst, std::fabs(closed - oracle) /
                                std::max(1.0, std::fabs(oracle)));
  }
  out.pass = worst < 1e-9;
  out.detail = "max rel err " + fmt(worst, "%.2e");
  return out;
}

std::vector<double> draw_stable(const tsb::StableTriplet& triplet, double t, int n,
                                std::uint64_t seed) {
  tsb::PhiloxStream rng(seed);
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (auto& x : xs) x = tsb::sample_stable_increment(triplet, t, rng);
  return xs;
}

CheckOutcome check_cauchy_ks(std::uint64_t seed) {
  CheckOutcome out{"stable law: symmetric alpha=1 is Cauchy (KS)", false, ""};
  const double pi = std::numbers::pi;
  tsb::StableTriplet trip{1.0 / pi, 1.0 / pi, 1.0, 0.0};
  const int n = 200000;
  auto xs = draw_stable(trip, 1.0, n, seed * 2 + 1);
  const double d =
      ks_statistic(std::move(xs), [&](double x) { return 0.5 + std::atan(x) / pi; });
  const double crit = 2.13 / std::sqrt(static_cast<double>(n));  // p ~ 1e-4
  out.pass = d < crit;
  out.detail = "D = " + fmt(d, "%.2e") + ", threshold " + fmt(crit, "%.2e");
  return out;
}

CheckOutcome check_self_similarity(std::uint64_t seed) {
  CheckOutcome out{"stable law: self-similarity across horizons (two-sample KS)", false, ""};
  tsb::StableTriplet trip{1.0, 1.0, 0.7, 0.0};
  const int n = 100000;
  auto xs = draw_stable(trip, 0.1, n, seed * 2 + 11);
  auto ys = draw_stable(trip, 1.0, n, seed * 2 + 12);
  for (auto& x : xs) x /= std::pow(0.1, 1.0 / 0.7);
  const double d = ks_two_sample(std::move(xs), std::move(ys));
  const double p = kolmogorov_tail(d * std::sqrt(n / 2.0));
  out.pass = p > 1e-4;
  out.detail = "p = " + fmt(p, "%.3g");
  return out;
}

struct WeightMoments {
  tsb::MomentAccumulator weight;
  tsb::MomentAccumulator weight_sq;
  tsb::MomentAccumulator plus;
  tsb::MomentAccumulator minus;
};

WeightMoments sample_weight_moments(const tsb::TemperedStableModel& model, int level,
                                    long long n, std::uint64_t seed) {
  WeightMoments m;
  tsb::ChiSampler sampler(model);
  const tsb::PhiloxStream master(seed);
  const double horizon = model.params().horizon;
  const double mu_plus_t = model.derived().mu_lambda_plus * horizon;
  const double mu_minus_t = model.derived().mu_lambda_minus * horizon;
  const auto& p = model.params();
  for (long long i = 0; i < n; ++i) {
    tsb::PhiloxStream rng = master.substream(static_cast<std::uint64_t>(i));
    const tsb::ExtremaSample s = sampler.sample(level, rng);
    const double w = std::exp(s.log_weight);
    m.weight.add(w);
    m.weight_sq.add(w * w);
    m.plus.add(std::exp(-p.lambda_plus * s.y_plus - mu_plus_t));
    m.minus.add(std::exp(p.lambda_minus * s.y_minus - mu_minus_t));
  }
  return m;
}

std::string sigma_detail(double mean, double target, double se) {
  const double pull = se > 0.0 ? (mean - target) / se : 0.0;
  return "mean " + fmt(mean, "%.6g") + " vs " + fmt(target, "%.6g") + " (" +
         fmt(pull, "%.2f") + " SE)";
}

CheckOutcome check_weight_mean(const WeightMoments& m) {
  CheckOutcome out{"importance weight: unit mean", false, ""};
  const double se = std::sqrt(m.weight.variance() / static_cast<double>(m.weight.count));
  out.pass = std::fabs(m.weight.mean - 1.0) <= 4.5 * se;
  out.detail = sigma_detail(m.weight.mean, 1.0, se);
  return out;
}

CheckOutcome check_weight_second_moment(const WeightMoments& m, double var_exponent,
                                        double horizon) {
  CheckOutcome out{"importance weight: second moment matches exp(vT)", false, ""};
  const double target = std::exp(var_exponent * horizon);
  const double se =
      std::sqrt(m.weight_sq.variance() / static_cast<double>(m.weight_sq.count));
  out.pass = std::fabs(m.weight_sq.mean - target) <= 4.5 * se;
  out.detail = sigma_detail(m.weight_sq.mean, target, se);
  return out;
}

CheckOutcome check_one_sided_martingales(const WeightMoments& m) {
  CheckOutcome out{"one-sided martingales: unit mean", false, ""};
  const double se_p = std::sqrt(m.plus.variance() / static_cast<double>(m.plus.count));
  const double se_m = std::sqrt(m.minus.variance() / static_cast<double>(m.minus.count));
  const bool pass_p = std::fabs(m.plus.mean - 1.0) <= 4.5 * se_p;
  const bool pass_m = std::fabs(m.minus.mean - 1.0) <= 4.5 * se_m;
  out.pass = pass_p && pass_m;
  out.detail = "plus " + sigma_detail(m.plus.mean, 1.0, se_p) + "; minus " +
               sigma_detail(m.minus.mean, 1.0, se_m);
  return out;
}

CheckOutcome check_stick_sandwich() {
  CheckOutcome out{"stick exponential sums: integral sandwich", false, ""};
  bool ok = true;
  double worst_slack = 0.0;
  for (double c : {0.5, 2.0, 10.0}) {
    const double integral = tsb::stick_integral(c);
    for (int n : {1, 5, 20}) {
      const double gap = n + integral - tsb::stick_exp_sum(c, n);
      const double upper = std::pow(2.0, -n) * integral;
      ok = ok && gap >= -1e-12 && gap <= upper * (1.0 + 1e-12) + 1e-12;
      worst_slack = std::max(worst_slack, upper > 0.0 ? gap / upper : 0.0);
    }
  }
  out.pass = ok;
  out.detail = "max gap/bound " + fmt(worst_slack, "%.3f");
  return out;
}

CheckOutcome check_threshold_constants() {
  CheckOutcome out{"accuracy thresholds and the phi map", false, ""};
  char b0[32], b1[32];
  std::snprintf(b0, sizeof(b0), "%.3g", tsb::mc_vs_mlmc_threshold_eta(1.5));
  std::snprintf(b1, sizeof(b1), "%.3g", tsb::mc_vs_mlmc_threshold_eta(2.0));
  const bool t_ok = std::string(b0) == "0.0915" && std::string(b1) == "5.06e-05";
  const bool phi_ok = std::fabs(tsb::phi(1.0) - 0.58496) < 5.0e-6;
  out.pass = t_ok && phi_ok;
  out.detail = std::string(b0) + ", " + b1 + ", phi(1) = " + fmt(tsb::phi(1.0), "%.7f");
  return out;
}

int cmd_validate(std::uint64_t seed) {
  tsb::ModelParams params = tsb::preset_params("usdjpy_v1");
  params.horizon = 30.0 / 365.0;
  const tsb::TemperedStableModel model(params);
  const WeightMoments moments = sample_weight_moments(model, 8, 200000, seed);

  std::vector<CheckOutcome> checks;
  checks.push_back(check_special_functions());
  checks.push_back(check_cauchy_ks(seed));
  checks.push_back(check_self_similarity(seed));
  checks.push_back(check_weight_mean(moments));
  checks.push_back(
      check_weight_second_moment(moments, model.derived().var_exponent, params.horizon));
  checks.push_back(check_one_sided_martingales(moments));
  checks.push_back(check_stick_sandwich());
  checks.push_back(check_threshold_constants());

  int passed = 0;
  for (const auto& check : checks) {
    std::cout << (check.pass ? "PASS" : "FAIL") << "  " << check.name << " (" << check.detail
              << ")\n";
    passed += check.pass ? 1 : 0;
  }
  std::cout << "validate: " << passed << "/" << checks.size() << " checks passed\n";
  return passed == static_cast<int>(checks.size()) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo for the joint law of (terminal value, supremum, time of the\n"
               "supremum) of a tempered stable process, via stick-breaking under the\n"
               "un-tempered measure with an exponential change-of-measure weight."};
  app.require_subcommand(1);

  CommonFlags est_flags;
  auto* est = app.add_subcommand("estimate", "Run the configured MC or MLMC estimator (JSON report)");
  add_common_flags(est, est_flags);

  CommonFlags mlmc_flags;
  auto* mlmc = app.add_subcommand("mlmc", "estimate with estimator=mlmc");
  add_common_flags(mlmc, mlmc_flags);

  CommonFlags conv_flags;
  int conv_max_level = 10;
  long long conv_samples = 20000;
  auto* conv = app.add_subcommand(
      "convergence", "Tabulate the coupled level-difference decay (CSV, plot-ready)");
  add_common_flags(conv, conv_flags);
  conv->add_option("--max-level", conv_max_level, "Deepest level (>= 2)");
  conv->add_option("--samples", conv_samples, "Coupled samples per level");

  CommonFlags cmp_flags;
  double cmp_accuracy = 1e-3;
  std::string cmp_grid;
  std::string cmp_grid_out;
  int cmp_grid_size = 100;
  double cmp_tmax = 8.0;
  auto* cmp = app.add_subcommand(
      "compare", "Algorithm-selection verdicts (JSON) and optional region grids (CSV)");
  add_common_flags(cmp, cmp_flags);
  cmp->add_option("--accuracy", cmp_accuracy, "Target accuracy for the SBG comparison");
  cmp->add_option("--grid", cmp_grid, "Region grid to emit: sb or sbg");
  cmp->add_option("--grid-out", cmp_grid_out, "Region grid CSV output file");
  cmp->add_option("--grid-size", cmp_grid_size, "Grid points per axis (default 100)");
  cmp->add_option("--tmax", cmp_tmax, "Largest horizon in the sbg grid");

  CommonFlags smp_flags;
  int smp_levels = 0;
  long long smp_count = 10;
  auto* smp = app.add_subcommand("sample", "Draw joint samples of (X_T, sup, tau) (CSV)");
  add_common_flags(smp, smp_flags);
  smp->add_option("--levels", smp_levels, "Stick-breaking level n (default: config levels, else 10)");
  smp->add_option("--count", smp_count, "Number of samples");

  std::int64_t val_seed = 1;
  auto* val = app.add_subcommand("validate", "Run the built-in invariant checks");
  val->add_option("--seed", val_seed, "Seed for the statistical checks")
      ->check(CLI::NonNegativeNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (est->parsed()) return cmd_estimate(est_flags, false);
    if (mlmc->parsed()) return cmd_estimate(mlmc_flags, true);
    if (conv->parsed()) return cmd_convergence(conv_flags, conv_max_level, conv_samples);
    if (cmp->parsed()) {
      return cmd_compare(cmp_flags, cmp_accuracy, cmp_grid, cmp_grid_out, cmp_grid_size,
                         cmp_tmax);
    }
    if (smp->parsed()) return cmd_sample(smp_flags, smp_levels, smp_count);
    if (val->parsed()) return cmd_validate(static_cast<std::uint64_t>(val_seed));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
