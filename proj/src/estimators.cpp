#include "tsb/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "tsb/rng.hpp"

namespace tsb {

void MomentAccumulator::add(double x) {
  ++count;
  const double delta = x - mean;
  mean += delta / static_cast<double>(count);
  m2 += delta * (x - mean);
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.count == 0) return;
  if (count == 0) {
    *this = other;
    return;
  }
  const double n1 = static_cast<double>(count);
  const double n2 = static_cast<double>(other.count);
  const double delta = other.mean - mean;
  m2 += other.m2 + delta * delta * (n1 * n2 / (n1 + n2));
  mean += delta * (n2 / (n1 + n2));
  count += other.count;
}

void Vec4Accumulator::add(const std::array<double, 4>& v) {
  ++count;
  std::array<double, 4> delta;
  for (int i = 0; i < 4; ++i) delta[i] = v[i] - mean[i];
  for (int i = 0; i < 4; ++i) mean[i] += delta[i] / static_cast<double>(count);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      scatter[static_cast<std::size_t>(4 * i + j)] += delta[i] * (v[j] - mean[j]);
    }
  }
}

void Vec4Accumulator::merge(const Vec4Accumulator& other) {
  if (other.count == 0) return;
  if (count == 0) {
    *this = other;
    return;
  }
  const double n1 = static_cast<double>(count);
  const double n2 = static_cast<double>(other.count);
  const double ratio = n1 * n2 / (n1 + n2);
  std::array<double, 4> delta;
  for (int i = 0; i < 4; ++i) delta[i] = other.mean[i] - mean[i];
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      scatter[static_cast<std::size_t>(4 * i + j)] +=
          other.scatter[static_cast<std::size_t>(4 * i + j)] + delta[i] * delta[j] * ratio;
    }
  }
  for (int i = 0; i < 4; ++i) mean[i] += delta[i] * (n2 / (n1 + n2));
  count += other.count;
}

double Vec4Accumulator::covariance(int i, int j) const {
  if (count < 2) return 0.0;
  return scatter[static_cast<std::size_t>(4 * i + j)] / static_cast<double>(count - 1);
}

double class_rate(PayoffClass payoff_class, const TemperedStableModel& model) {
  switch (payoff_class) {
    case PayoffClass::lipschitz:
      return model.eta_p(1.0);
    case PayoffClass::barrier_type1:
      return std::pow(2.0, 1.0 / (1.0 + model.derived().alpha_star));
    case PayoffClass::barrier_type2:
      return std::exp(1.0 / std::numbers::e);
  }
  throw std::logic_error("estimators: unreachable payoff class");
}

int choose_levels(BiasPolicy policy, double epsilon, PayoffClass payoff_class,
                  const TemperedStableModel& model, double margin,
                  const std::vector<double>& pilot_level_means) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("estimators: epsilon must be positive");
  if (policy == BiasPolicy::clt_rate) {
    const double eta_g = class_rate(payoff_class, model);
    const double c0 = (1.0 + margin) / std::log(eta_g);
    const int n = static_cast<int>(std::ceil(c0 * std::log(1.0 / epsilon)));
    return std::max(1, n);
  }
  // BIAS_EXTRAPOLATION: least-squares fit of log|mean D_k| over the supplied
  // pilot levels, then the smallest n with predicted geometric tail
  // sum_{k>n} |bias_k| <= eps/sqrt(2).
  std::vector<std::pair<double, double>> pts;
  for (std::size_t k = 0; k < pilot_level_means.size(); ++k) {
    const double m = std::fabs(pilot_level_means[k]);
    if (m > 0.0) pts.emplace_back(static_cast<double>(k + 1), std::log(m));
  }
  if (pts.size() < 3) {
    throw std::invalid_argument(
        "estimators: bias extrapolation needs at least three nonzero pilot level means");
  }
  // Use the tail of the fitted points; early levels are pre-asymptotic.
  const std::size_t window = std::min<std::size_t>(pts.size(), 8);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const std::size_t first = pts.size() - window;
  for (std::size_t i = first; i < pts.size(); ++i) {
    sx += pts[i].first;
    sy += pts[i].second;
    sxx += pts[i].first * pts[i].first;
    sxy += pts[i].first * pts[i].second;
  }
  const double w = static_cast<double>(window);
  const double denom = w * sxx - sx * sx;
  const double slope = denom != 0.0 ? (w * sxy - sx * sy) / denom : 0.0;
  const double intercept = (sy - slope * sx) / w;
  const double target = epsilon / std::numbers::sqrt2;
  if (slope >= -1e-3) {
    // No observable decay; fall back to the largest pilot level.
    return static_cast<int>(pilot_level_means.size());
  }
  const double q = std::exp(slope);
  for (int n = 1; n <= 1000; ++n) {
    const double tail = std::exp(intercept + slope * (n + 1)) / (1.0 - q);
    if (tail <= target) return n;
  }
  return 1000;
}

std::array<double, 3> control_variate_weights(const Vec4Accumulator& moments,
                                              bool paper_weights,
                                              std::vector<std::string>* warnings) {
  std::array<double, 3> w{};
  auto warn = [&](const char* msg) {
    if (warnings) warnings->emplace_back(msg);
  };
  if (moments.count < 2) {
    warn("control variates: too few samples; using zero weights");
    return w;
  }
  double a[3][4];  // augmented system [M | c]
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      a[i][j] = moments.covariance(i + 1, j + 1);
      if (paper_weights && i == j) a[i][j] *= 2.0;
    }
    a[i][3] = moments.covariance(0, i + 1);
  }
  double scale = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) scale = std::max(scale, std::fabs(a[i][j]));
  }
  if (scale == 0.0) {
    warn("control variates: degenerate martingale moments; using zero weights");
    return w;
  }
  // Gaussian elimination with partial pivoting on the 3x3 system.
  int perm[3] = {0, 1, 2};
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::fabs(a[perm[r]][col]) > std::fabs(a[perm[pivot]][col])) pivot = r;
    }
    std::swap(perm[col], perm[pivot]);
    const double p = a[perm[col]][col];
    if (std::fabs(p) < 1e-12 * scale) {
      warn("control variates: singular weight system; using zero weights");
      return {};
    }
    for (int r = col + 1; r < 3; ++r) {
      const double f = a[perm[r]][col] / p;
      for (int j = col; j < 4; ++j) a[perm[r]][j] -= f * a[perm[col]][j];
    }
  }
  for (int col = 2; col >= 0; --col) {
    double rhs = a[perm[col]][3];
    for (int j = col + 1; j < 3; ++j) rhs -= a[perm[col]][j] * w[static_cast<std::size_t>(j)];
    w[static_cast<std::size_t>(col)] = rhs / a[perm[col]][col];
  }
  return w;
}

std::pair<double, double> clt_ci(double estimate, double variance_of_estimator,
                                 double level) {
  if (variance_of_estimator < 0.0) {
    throw std::domain_error("estimators: negative estimator variance");
  }
  if (!(level > 0.0) || !(level < 1.0)) {
    throw std::domain_error("estimators: confidence level must lie in (0,1)");
  }
  const double z = detail::inverse_normal_cdf(0.5 * (1.0 + level));
  const double half = z * std::sqrt(variance_of_estimator);
  return {estimate - half, estimate + half};
}

namespace {

// Per-sample 4-vector (gW, W, W+, W-) at a single level (plain draw) or a
// coupled level difference ((g_k - g_{k-1})W, W, W+, W-).
class LevelKernel {
 public:
  LevelKernel(const TemperedStableModel& model, const PayoffSpec& payoff, int level,
              bool pair_mode)
      : model_(&model),
        payoff_(&payoff),
        level_(level),
        pair_mode_(pair_mode && level >= 2),
        lambda_plus_(model.params().lambda_plus),
        lambda_minus_(model.params().lambda_minus),
        mu_plus_t_(model.derived().mu_lambda_plus * model.horizon()),
        mu_minus_t_(model.derived().mu_lambda_minus * model.horizon()) {}

  int level() const { return level_; }

  std::array<double, 4> operator()(ChiSampler& sampler, PhiloxStream& rng) const {
    if (!pair_mode_) {
      const ExtremaSample s = sampler.sample(level_, rng);
      const double w = std::exp(s.log_weight);
      return {evaluate(*payoff_, s.chi()) * w, w, weight_plus(s.y_plus),
              weight_minus(s.y_minus)};
    }
    const LevelPair p = sampler.sample_pair(level_, rng);
    const double w = std::exp(p.log_weight);
    const double dg = evaluate(*payoff_, p.chi_curr) - evaluate(*payoff_, p.chi_prev);
    return {dg * w, w, weight_plus(p.y_plus), weight_minus(p.y_minus)};
  }

 private:
  double weight_plus(double y_plus) const {
    return std::exp(-lambda_plus_ * y_plus - mu_plus_t_);
  }
  double weight_minus(double y_minus) const {
    return std::exp(lambda_minus_ * y_minus - mu_minus_t_);
  }

  const TemperedStableModel* model_;
  const PayoffSpec* payoff_;
  int level_;
  bool pair_mode_;
  double lambda_plus_;
  double lambda_minus_;
  double mu_plus_t_;
  double mu_minus_t_;
};

// Runs `n_samples` kernel draws split into fixed-size chunks, one derived
// substream per (level, chunk).  Partial accumulators merge in chunk-index
// order, so the result is bit-identical for any worker count.
Vec4Accumulator run_level(const TemperedStableModel& model, const LevelKernel& kernel,
                          long long n_samples, const EstimatorOptions& options) {
  Vec4Accumulator total;
  if (n_samples <= 0) return total;
  const long long chunk = std::max<long long>(1, options.chunk_size);
  const long long n_chunks = (n_samples + chunk - 1) / chunk;
  std::vector<Vec4Accumulator> parts(static_cast<std::size_t>(n_chunks));
  const PhiloxStream master(options.seed);
  const auto level_key = static_cast<std::uint64_t>(kernel.level()) << 40;

  auto work = [&](long long first, long long stride) {
    ChiSampler sampler(model);
    for (long long c = first; c < n_chunks; c += stride) {
      PhiloxStream rng = master.substream(level_key + static_cast<std::uint64_t>(c));
      Vec4Accumulator acc;
      const long long hi = std::min(n_samples, (c + 1) * chunk);
      for (long long i = c * chunk; i < hi; ++i) acc.add(kernel(sampler, rng));
      parts[static_cast<std::size_t>(c)] = acc;
    }
  };

  const int threads = std::max(1, options.threads);
  if (threads == 1 || n_chunks == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }
  for (const auto& p : parts) total.merge(p);
  return total;
}

double cv_mean(const Vec4Accumulator& acc, const std::array<double, 3>& w) {
  double m = acc.mean[0];
  for (int i = 0; i < 3; ++i) m -= w[static_cast<std::size_t>(i)] * (acc.mean[static_cast<std::size_t>(i) + 1] - 1.0);
  return m;
}

double cv_variance(const Vec4Accumulator& acc, const std::array<double, 3>& w) {
  double v = acc.covariance(0, 0);
  for (int i = 0; i < 3; ++i) {
    v -= 2.0 * w[static_cast<std::size_t>(i)] * acc.covariance(0, i + 1);
    for (int j = 0; j < 3; ++j) {
      v += w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)] *
           acc.covariance(i + 1, j + 1);
    }
  }
  return std::max(v, 0.0);
}

long long pilot_size(const EstimatorOptions& options) {
  const double by_eps = options.epsilon > 0.0 ? std::ceil(1.0 / options.epsilon) : 0.0;
  return std::max<long long>(options.pilot_floor, static_cast<long long>(by_eps));
}

struct LevelRun {
  Vec4Accumulator pilot;        // first N0 samples
  Vec4Accumulator final_pass;   // first N_k samples (exact-N mean)
  long long allocated = 0;      // N_k
  long long generated = 0;      // pilot + regeneration work actually done
  std::array<double, 3> weights{};
};

// Exact-N level summary: the mean is taken over precisely the allocated
// samples; the variance entering the CI comes from whichever accumulator saw
// more samples (the pilot when N_k < N0), evaluated at the final weights.
LevelStats summarize_level(int level, const LevelRun& run, bool control_variates) {
  const std::array<double, 3> w = control_variates ? run.weights : std::array<double, 3>{};
  const Vec4Accumulator& var_acc =
      run.pilot.count > run.final_pass.count ? run.pilot : run.final_pass;
  LevelStats stats;
  stats.level = level;
  stats.samples = run.final_pass.count;
  stats.mean = cv_mean(run.final_pass, w);
  stats.variance = cv_variance(var_acc, w);
  stats.cost_units = static_cast<double>(level + 1) * static_cast<double>(run.generated);
  stats.cv_weights = w;
  return stats;
}

std::vector<long long> allocate_samples(double epsilon,
                                        const std::vector<double>& variances) {
  const std::size_t n = variances.size();
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    s += std::sqrt(static_cast<double>(k + 1) * variances[k]);
  }
  std::vector<long long> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double nk =
        2.0 / (epsilon * epsilon) * std::sqrt(variances[k] / static_cast<double>(k + 1)) * s;
    out[k] = std::max<long long>(1, static_cast<long long>(std::ceil(nk)));
  }
  return out;
}

}  // namespace

EstimateReport mc_estimate(const TemperedStableModel& model, const PayoffSpec& payoff,
                           const EstimatorOptions& options) {
  EstimateReport report;
  report.kind = EstimatorKind::mc;
  report.confidence_level = options.confidence_level;
  report.seed = options.seed;

  int n;
  long long n_final;
  LevelRun run;
  const PayoffClass cls = payoff_class(payoff);

  if (options.fixed_mode) {
    if (options.fixed_levels < 1 || options.fixed_samples < 1) {
      throw std::invalid_argument("estimators: fixed mode needs levels >= 1 and samples >= 1");
    }
    n = options.fixed_levels;
    n_final = options.fixed_samples;
    const LevelKernel kernel(model, payoff, n, /*pair_mode=*/false);
    run.final_pass = run_level(model, kernel, n_final, options);
    run.generated = n_final;
  } else {
    if (!(options.epsilon > 0.0)) {
      throw std::invalid_argument("estimators: epsilon must be positive");
    }
    report.epsilon = options.epsilon;
    if (options.policy == BiasPolicy::bias_extrapolation) {
      // Pilot the level differences to locate the bias tail, then estimate.
      MlmcPlan plan = plan_mlmc(model, payoff, options);
      n = plan.levels;
      report.warnings.insert(report.warnings.end(), plan.warnings.begin(),
                             plan.warnings.end());
    } else {
      n = choose_levels(options.policy, options.epsilon, cls, model, options.margin);
    }
    const LevelKernel kernel(model, payoff, n, /*pair_mode=*/false);
    const long long n_pilot = pilot_size(options);
    run.pilot = run_level(model, kernel, n_pilot, options);
    std::array<double, 3> pilot_w{};
    if (options.control_variates) {
      pilot_w = control_variate_weights(run.pilot, options.paper_weights, &report.warnings);
    }
    const double pilot_var = cv_variance(run.pilot, pilot_w);
    if (pilot_var == 0.0) {
      report.warnings.emplace_back(
          "pilot variance is zero; flooring the sample size at the pilot size");
      n_final = n_pilot;
    } else {
      n_final = std::max<long long>(
          1, static_cast<long long>(
                 std::ceil(2.0 * pilot_var / (options.epsilon * options.epsilon))));
    }
    run.final_pass = run_level(model, kernel, n_final, options);
    run.generated = n_pilot + n_final;
  }

  if (options.control_variates) {
    run.weights = control_variate_weights(run.final_pass, options.paper_weights,
                                          &report.warnings);
  }
  run.allocated = n_final;

  const LevelStats stats = summarize_level(n, run, options.control_variates);
  report.levels = n;
  report.level_stats = {stats};
  report.total_cost_units = stats.cost_units;
  report.estimate = stats.mean;
  const double est_var = stats.variance / static_cast<double>(stats.samples);
  std::tie(report.ci_low, report.ci_high) =
      clt_ci(report.estimate, est_var, options.confidence_level);
  if (options.control_variates) {
    ControlVariateInfo info;
    info.weights = run.weights;
    const Vec4Accumulator& var_acc =
        run.pilot.count > run.final_pass.count ? run.pilot : run.final_pass;
    info.variance_without = cv_variance(var_acc, {});
    info.variance_with = cv_variance(var_acc, run.weights);
    report.control_variates = info;
  }
  return report;
}

namespace {

// Shared pilot machinery for MLMC planning and estimation.
struct PilotBank {
  std::vector<Vec4Accumulator> accs;     // per level 1..n
  std::vector<std::array<double, 3>> weights;
  std::vector<double> variances;
  std::vector<double> means;
  long long pilot_n = 0;

  void extend(const TemperedStableModel& model, const PayoffSpec& payoff,
              const EstimatorOptions& options, int levels,
              std::vector<std::string>* warnings) {
    while (static_cast<int>(accs.size()) < levels) {
      const int k = static_cast<int>(accs.size()) + 1;
      const LevelKernel kernel(model, payoff, k, /*pair_mode=*/true);
      Vec4Accumulator acc = run_level(model, kernel, pilot_n, options);
      std::array<double, 3> w{};
      if (options.control_variates) {
        w = control_variate_weights(acc, options.paper_weights, warnings);
      }
      variances.push_back(cv_variance(acc, w));
      means.push_back(cv_mean(acc, w));
      weights.push_back(w);
      accs.push_back(std::move(acc));
    }
  }
};

constexpr int kMaxLevels = 62;

int plan_levels(const TemperedStableModel& model, const PayoffSpec& payoff,
                const EstimatorOptions& options, PilotBank& bank,
                std::vector<std::string>* warnings) {
  const PayoffClass cls = payoff_class(payoff);
  if (options.policy == BiasPolicy::clt_rate) {
    return std::min(kMaxLevels, choose_levels(options.policy, options.epsilon, cls, model,
                                              options.margin));
  }
  // Adaptive pilot growth: extend until the fitted bias tail is resolved.
  int levels = 6;
  for (;;) {
    bank.extend(model, payoff, options, levels, warnings);
    const int n = choose_levels(BiasPolicy::bias_extrapolation, options.epsilon, cls, model,
                                options.margin, bank.means);
    if (n <= static_cast<int>(bank.accs.size()) || levels >= kMaxLevels) {
      return std::min(n, kMaxLevels);
    }
    levels = std::min(kMaxLevels, std::max(n, levels + 4));
  }
}

MlmcPlan plan_with_bank(const TemperedStableModel& model, const PayoffSpec& payoff,
                        const EstimatorOptions& options, PilotBank& bank) {
  if (!(options.epsilon > 0.0)) {
    throw std::invalid_argument("estimators: epsilon must be positive");
  }
  MlmcPlan plan;
  bank.pilot_n = pilot_size(options);
  plan.levels = plan_levels(model, payoff, options, bank, &plan.warnings);
  bank.extend(model, payoff, options, plan.levels, &plan.warnings);
  bank.accs.resize(static_cast<std::size_t>(plan.levels));
  bank.weights.resize(static_cast<std::size_t>(plan.levels));
  bank.variances.resize(static_cast<std::size_t>(plan.levels));
  bank.means.resize(static_cast<std::size_t>(plan.levels));
  plan.pilot_samples = bank.pilot_n;
  plan.pilot_means = bank.means;
  plan.pilot_variances = bank.variances;
  plan.samples_per_level = allocate_samples(options.epsilon, bank.variances);
  bool all_zero = true;
  for (double v : bank.variances) all_zero = all_zero && v == 0.0;
  if (all_zero) {
    plan.warnings.emplace_back(
        "pilot variance is zero on every level; allocation floored at one sample per level");
  }
  return plan;
}

}  // namespace

MlmcPlan plan_mlmc(const TemperedStableModel& model, const PayoffSpec& payoff,
                   const EstimatorOptions& options) {
  PilotBank bank;
  return plan_with_bank(model, payoff, options, bank);
}

EstimateReport mlmc_estimate(const TemperedStableModel& model, const PayoffSpec& payoff,
                             const EstimatorOptions& options) {
  EstimateReport report;
  report.kind = EstimatorKind::mlmc;
  report.confidence_level = options.confidence_level;
  report.seed = options.seed;

  int n;
  std::vector<LevelRun> runs;

  if (options.fixed_mode) {
    if (options.fixed_levels < 1 || options.fixed_samples < 1) {
      throw std::invalid_argument("estimators: fixed mode needs levels >= 1 and samples >= 1");
    }
    n = options.fixed_levels;
    runs.resize(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
      LevelRun& run = runs[static_cast<std::size_t>(k - 1)];
      const LevelKernel kernel(model, payoff, k, /*pair_mode=*/true);
      run.allocated = options.fixed_samples;
      run.final_pass = run_level(model, kernel, run.allocated, options);
      run.generated = run.allocated;
      if (options.control_variates) {
        run.weights = control_variate_weights(run.final_pass, options.paper_weights,
                                              &report.warnings);
      }
    }
  } else {
    PilotBank bank;
    const MlmcPlan plan = plan_with_bank(model, payoff, options, bank);
    report.epsilon = options.epsilon;
    report.warnings.insert(report.warnings.end(), plan.warnings.begin(), plan.warnings.end());
    n = plan.levels;
    runs.resize(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
      LevelRun& run = runs[static_cast<std::size_t>(k - 1)];
      const LevelKernel kernel(model, payoff, k, /*pair_mode=*/true);
      run.pilot = bank.accs[static_cast<std::size_t>(k - 1)];
      run.allocated = plan.samples_per_level[static_cast<std::size_t>(k - 1)];
      run.final_pass = run_level(model, kernel, run.allocated, options);
      run.generated = plan.pilot_samples + run.allocated;
      run.weights = options.control_variates
                        ? control_variate_weights(run.final_pass, options.paper_weights,
                                                  &report.warnings)
                        : std::array<double, 3>{};
      if (options.control_variates && run.final_pass.count < 2) {
        // Too few samples to fit; fall back to the pilot fit for this level.
        run.weights = bank.weights[static_cast<std::size_t>(k - 1)];
      }
    }
  }

  report.levels = n;
  double estimate = 0.0;
  double est_var = 0.0;
  double cost = 0.0;
  double var_without = 0.0;
  double var_with = 0.0;
  for (int k = 1; k <= n; ++k) {
    const LevelRun& run = runs[static_cast<std::size_t>(k - 1)];
    const LevelStats stats = summarize_level(k, run, options.control_variates);
    estimate += stats.mean;
    est_var += stats.variance / static_cast<double>(stats.samples);
    cost += stats.cost_units;
    if (options.control_variates) {
      const Vec4Accumulator& var_acc =
          run.pilot.count > run.final_pass.count ? run.pilot : run.final_pass;
      var_without += cv_variance(var_acc, {}) / static_cast<double>(stats.samples);
      var_with += cv_variance(var_acc, run.weights) / static_cast<double>(stats.samples);
    }
    report.level_stats.push_back(stats);
  }
  report.estimate = estimate;
  report.total_cost_units = cost;
  std::tie(report.ci_low, report.ci_high) =
      clt_ci(estimate, est_var, options.confidence_level);
  if (options.control_variates) {
    ControlVariateInfo info;
    info.weights = runs.front().weights;
    info.variance_without = var_without;
    info.variance_with = var_with;
    report.control_variates = info;
  }
  return report;
}

std::vector<LevelStats> level_diagnostics(const TemperedStableModel& model,
                                          const PayoffSpec& payoff, int max_level,
                                          long long samples, std::uint64_t seed,
                                          int threads) {
  if (max_level < 1) throw std::invalid_argument("estimators: max_level must be >= 1");
  if (samples < 2) throw std::invalid_argument("estimators: need at least two samples");
  EstimatorOptions options;
  options.seed = seed;
  options.threads = threads;
  std::vector<LevelStats> out;
  out.reserve(static_cast<std::size_t>(max_level));
  for (int k = 1; k <= max_level; ++k) {
    const LevelKernel kernel(model, payoff, k, /*pair_mode=*/true);
    const Vec4Accumulator acc = run_level(model, kernel, samples, options);
    LevelStats stats;
    stats.level = k;
    stats.samples = acc.count;
    stats.mean = acc.mean[0];
    stats.variance = acc.covariance(0, 0);
    stats.cost_units = static_cast<double>(k + 1) * static_cast<double>(acc.count);
    out.push_back(stats);
  }
  return out;
}

}  // namespace tsb
