// Acceptance harness: a self-contained binary that checks the twelve release
// criteria end to end and prints exactly one PASS/FAIL line per criterion.
// Tolerances are pinned here, not configurable; the exit code is the number
// of failed criteria.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <string>
#include <utility>
#include <vector>

#include "stat_utils.hpp"
#include "tsb/cost_models.hpp"
#include "tsb/estimators.hpp"
#include "tsb/model.hpp"
#include "tsb/payoffs.hpp"
#include "tsb/rng.hpp"
#include "tsb/sb_core.hpp"
#include "tsb/stable.hpp"

using namespace tsb;
namespace ts = tsb::testsupport;

namespace {

constexpr double kZ975 = 1.959963984540054;  // 97.5% normal quantile (95% CI)

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename... Args>
std::string strf(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return std::string(buf);
}

int g_failed = 0;

void report(int idx, const char* name, bool pass, double seconds, const std::string& detail) {
  std::printf("[%2d] %-34s %s  (%6.1fs)  %s\n", idx, name, pass ? "PASS" : "FAIL", seconds,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failed;
}

// Ordinary least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Fixed-(n, N) single-level MC run, single worker, seed 1.
EstimateReport run_mc(const ModelParams& params, const PayoffSpec& payoff, int levels,
                      long long samples, bool control_variates = false) {
  TemperedStableModel model(params);
  EstimatorOptions options;
  options.fixed_mode = true;
  options.fixed_levels = levels;
  options.fixed_samples = samples;
  options.seed = 1;
  options.threads = 1;
  options.control_variates = control_variates;
  return mc_estimate(model, payoff, options);
}

double ci_standard_error(const EstimateReport& r) {
  return (r.ci_high - r.ci_low) / (2.0 * kZ975);
}

// 1. The variance exponent mu_{2 lambda} - 2 mu_lambda of each built-in
//    preset matches the published table to 0.5% relative; well under 1 s.
void criterion_1() {
  const auto t0 = Clock::now();
  const std::array<std::pair<const char*, double>, 5> rows = {{{"usdjpy_v1", 0.9658},
                                                               {"usdjpy_v2", 0.0395},
                                                               {"mcd", 41.47},
                                                               {"bix", 96.6},
                                                               {"sox", 196.81}}};
  bool ok = true;
  double worst = 0.0;
  std::string detail;
  for (const auto& [name, printed] : rows) {
    const TemperedStableModel model(preset_params(name));
    const double value = model.derived().var_exponent;
    const double rel = std::fabs(value - printed) / printed;
    worst = std::max(worst, rel);
    ok = ok && rel <= 5e-3;
    detail += strf("%s %.4f ", name, value);
  }
  const double el = seconds_since(t0);
  ok = ok && el < 1.0;
  report(1, "variance-exponent table", ok, el, detail + strf("(worst rel %.2e, tol 5e-3)", worst));
}

// 2. The MC-vs-MLMC accuracy thresholds print as 0.0915 (eta1 = 3/2) and
//    5.06e-05 (eta1 = 2) at three significant figures; well under 1 s.
void criterion_2() {
  const auto t0 = Clock::now();
  char a[32], b[32];
  std::snprintf(a, sizeof a, "%.3g", mc_vs_mlmc_threshold_eta(1.5));
  std::snprintf(b, sizeof b, "%.3g", mc_vs_mlmc_threshold_eta(2.0));
  const double el = seconds_since(t0);
  const bool ok =
      std::strcmp(a, "0.0915") == 0 && std::strcmp(b, "5.06e-05") == 0 && el < 1.0;
  report(2, "MC-vs-MLMC thresholds", ok, el,
         strf("eta1=3/2 -> %s (want 0.0915), eta1=2 -> %s (want 5.06e-05)", a, b));
}

// 3. phi(1) = 0.58496 to five decimals.
void criterion_3() {
  const auto t0 = Clock::now();
  const double value = phi(1.0);
  const double el = seconds_since(t0);
  const bool ok = std::fabs(value - 0.58496) < 5e-6 && el < 1.0;
  report(3, "phi(1) anchor", ok, el, strf("phi(1) = %.7f (want 0.58496 +- 5e-6)", value));
}

// 4. Up-and-out call on the USD/JPY v2 preset (K=95, M=102, S0=100) at
//    n=15, N=1e5 reproduces the published values at both printed maturities
//    within 3 CLT standard errors.
void criterion_4() {
  const auto t0 = Clock::now();
  const std::array<std::pair<double, double>, 2> cases = {
      {{90.0 / 365.0, 1.109}, {180.0 / 365.0, 0.4626}}};
  bool ok = true;
  std::string detail;
  for (const auto& [horizon, reference] : cases) {
    ModelParams params = preset_params("usdjpy_v2");
    params.horizon = horizon;
    const auto r = run_mc(params, PayoffSpec::up_and_out_call(100.0, 95.0, 102.0), 15, 100000);
    const double z = std::fabs(r.estimate - reference) / ci_standard_error(r);
    ok = ok && z <= 3.0;
    detail += strf("T=%.0fd %.4f vs %.4f (z=%.2f) ", horizon * 365.0, r.estimate, reference, z);
  }
  report(4, "barrier option (USD/JPY v2)", ok, seconds_since(t0), detail + "tol 3 SE");
}

// 5. Ulcer index at T=14/365, n=12, N=1e6 for the MCD and BIX presets matches
//    the published 4.318 / 3.688 within 3 standard errors propagated through
//    the square-root map (SE_UI = UI * SE_g / (2 E[g])).
void criterion_5() {
  const auto t0 = Clock::now();
  const std::array<std::pair<const char*, double>, 2> cases = {{{"mcd", 4.318}, {"bix", 3.688}}};
  bool ok = true;
  std::string detail;
  for (const auto& [name, reference] : cases) {
    ModelParams params = preset_params(name);
    params.horizon = 14.0 / 365.0;
    const auto r = run_mc(params, PayoffSpec::ulcer(100.0), 12, 1000000);
    const double ui = ulcer_index(r.estimate);
    const double se_ui = ui * ci_standard_error(r) / (2.0 * r.estimate);
    const double z = std::fabs(ui - reference) / se_ui;
    ok = ok && z <= 3.0;
    detail += strf("%s %.4f vs %.3f (z=%.2f) ", name, ui, reference, z);
  }
  report(5, "ulcer index (MCD, BIX)", ok, seconds_since(t0), detail + "tol 3 SE");
}

// 6. The importance weight is a unit-mean martingale and its second moment is
//    e^{(mu_{2l} - 2 mu_l) T}: both within 4 empirical standard errors at
//    N=1e6 for the USD/JPY v1 and v2 presets, T=30/365.
void criterion_6() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  for (const char* name : {"usdjpy_v1", "usdjpy_v2"}) {
    ModelParams params = preset_params(name);
    params.horizon = 30.0 / 365.0;
    const TemperedStableModel model(params);
    ChiSampler sampler(model);
    const PhiloxStream master(1);
    MomentAccumulator w1, w2;
    const long long n_samples = 1000000;
    for (long long i = 0; i < n_samples; ++i) {
      PhiloxStream sub = master.substream(static_cast<std::uint64_t>(i));
      const ExtremaSample s = sampler.sample(8, sub);
      const double w = std::exp(s.log_weight);
      w1.add(w);
      w2.add(w * w);
    }
    const double se1 = std::sqrt(w1.variance() / static_cast<double>(n_samples));
    const double se2 = std::sqrt(w2.variance() / static_cast<double>(n_samples));
    const double target2 = std::exp(model.derived().var_exponent * params.horizon);
    const double z1 = std::fabs(w1.mean - 1.0) / se1;
    const double z2 = std::fabs(w2.mean - target2) / se2;
    ok = ok && z1 <= 4.0 && z2 <= 4.0;
    detail += strf("%s E[W] z=%.2f E[W^2] z=%.2f ", name, z1, z2);
  }
  report(6, "weight martingale moments", ok, seconds_since(t0), detail + "tol 4 SE");
}

// 7. Per-level MLMC decay on USD/JPY v2 at T=30/365, 1e5 samples/level,
//    levels 3..12: the fitted log-variance slope for the Lipschitz payoff
//    g = sup is <= -log(1.25); for the barrier payoff the variance slope is
//    negative and the bias slope is <= -log(1.25).
void criterion_7() {
  const auto t0 = Clock::now();
  ModelParams params = preset_params("usdjpy_v2");
  params.horizon = 30.0 / 365.0;
  const TemperedStableModel model(params);
  const double envelope = -std::log(1.25);

  const auto slopes = [&](const PayoffSpec& payoff) {
    const auto stats = level_diagnostics(model, payoff, 12, 100000, 1, 1);
    std::vector<double> ks, log_var, log_bias;
    for (const auto& s : stats) {
      if (s.level < 3) continue;
      ks.push_back(static_cast<double>(s.level));
      log_var.push_back(std::log(s.variance));
      log_bias.push_back(std::log(std::fabs(s.mean)));
    }
    return std::pair<double, double>{fit_slope(ks, log_var), fit_slope(ks, log_bias)};
  };

  const auto [lip_var, lip_bias] = slopes(PayoffSpec::supremum());
  const auto [bar_var, bar_bias] = slopes(PayoffSpec::up_and_out_call(100.0, 95.0, 102.0));
  const bool ok = lip_var <= envelope && bar_var < 0.0 && bar_bias <= envelope;
  report(7, "MLMC geometric decay", ok, seconds_since(t0),
         strf("sup var %.3f (<= %.3f), barrier var %.3f (< 0) bias %.3f (<= %.3f)", lip_var,
              envelope, bar_var, bar_bias, envelope));
}

// 8. Stick-sum sandwich 0 <= n + I(c) - S_n(c) <= 2^{-n} I(c) holds to series
//    truncation for c in {0.5, 2, 10} x n in {1, 5, 20}, and the n=3, c=2
//    expectation matches a 1e6-sequence MC estimate at 4 sigma.
void criterion_8() {
  const auto t0 = Clock::now();
  bool ok = true;
  double worst = 0.0;
  for (const double c : {0.5, 2.0, 10.0}) {
    const double integral = stick_integral(c);
    for (const int n : {1, 5, 20}) {
      const double gap = n + integral - stick_exp_sum(c, n);
      const double upper = std::pow(2.0, -n) * integral;
      ok = ok && gap >= -1e-12 && gap <= upper * (1.0 + 1e-12) + 1e-12;
      worst = std::max(worst, upper > 0.0 ? gap / upper : 0.0);
    }
  }

  const double exact = stick_exp_sum(2.0, 3);
  PhiloxStream rng(8);
  MomentAccumulator acc;
  for (int i = 0; i < 1000000; ++i) {
    const StickSequence sticks = sample_sticks(1.0, 3, rng);
    double sum = 0.0;
    for (const double l : sticks.lengths) sum += std::exp(2.0 * l);
    acc.add(sum);
  }
  const double se = std::sqrt(acc.variance() / static_cast<double>(acc.count));
  const double z = std::fabs(acc.mean - exact) / se;
  ok = ok && z <= 4.0;
  report(8, "stick-sum sandwich + MC check", ok, seconds_since(t0),
         strf("max gap/bound %.3f, MC %.5f vs exact %.5f (z=%.2f, tol 4 SE)", worst, acc.mean,
              exact, z));
}

// 9. 200 independent epsilon=0.05 MLMC runs of the Lipschitz payoff g = sup
//    (USD/JPY v2, T=30/365): the nominal-95% confidence intervals cover a
//    1e7-sample fixed-depth MC reference with frequency in [0.90, 0.99].
void criterion_9() {
  const auto t0 = Clock::now();
  ModelParams params = preset_params("usdjpy_v2");
  params.horizon = 30.0 / 365.0;
  const TemperedStableModel model(params);
  const PayoffSpec payoff = PayoffSpec::supremum();

  EstimatorOptions ref_options;
  ref_options.fixed_mode = true;
  ref_options.fixed_levels = 25;
  ref_options.fixed_samples = 10000000;
  ref_options.seed = 999983;
  ref_options.threads = 1;
  const auto reference = mc_estimate(model, payoff, ref_options);

  int covered = 0;
  const int runs = 200;
  for (int r = 0; r < runs; ++r) {
    EstimatorOptions options;
    options.epsilon = 0.05;
    options.seed = 20000 + static_cast<std::uint64_t>(r);
    options.threads = 1;
    const auto rep = mlmc_estimate(model, payoff, options);
    if (rep.ci_low <= reference.estimate && reference.estimate <= rep.ci_high) ++covered;
  }
  const double freq = static_cast<double>(covered) / runs;
  const bool ok = freq >= 0.90 && freq <= 0.99;
  report(9, "CLT coverage (200 MLMC runs)", ok, seconds_since(t0),
         strf("covered %d/%d = %.3f (want [0.90, 0.99]), ref %.6e", covered, runs, freq,
              reference.estimate));
}

// 10. Control variates on the ulcer payoff at T=28/365, n=12, N=1e6.  MCD:
//     the in-sample controlled variance never exceeds the uncontrolled one
//     and the ratio is <= 0.5.  SOX: ratio <= 0.15.  The SOX bound assumes
//     the variance ratio concentrates, which a heavy-tailed weight
//     distribution (e^{vT} ~ 3.6e6) does not deliver at this sample size;
//     the line reports the measured ratio either way.
void criterion_10() {
  const auto t0 = Clock::now();
  const auto ratio_for = [&](const char* name, double& ratio, bool& ordered) {
    ModelParams params = preset_params(name);
    params.horizon = 28.0 / 365.0;
    const auto r = run_mc(params, PayoffSpec::ulcer(100.0), 12, 1000000, true);
    const auto& cv = *r.control_variates;
    ratio = cv.variance_with / cv.variance_without;
    ordered = cv.variance_with <= cv.variance_without;
  };
  double mcd_ratio = 0.0, sox_ratio = 0.0;
  bool mcd_ordered = false, sox_ordered = false;
  ratio_for("mcd", mcd_ratio, mcd_ordered);
  ratio_for("sox", sox_ratio, sox_ordered);
  const bool ok = mcd_ordered && mcd_ratio <= 0.5 && sox_ordered && sox_ratio <= 0.15;
  report(10, "control-variate reduction", ok, seconds_since(t0),
         strf("mcd ratio %.3f (<= 0.5, ordered %s), sox ratio %.3f (<= 0.15, ordered %s)",
              mcd_ratio, mcd_ordered ? "yes" : "no", sox_ratio, sox_ordered ? "yes" : "no"));
}

// 11. Stable sampler law checks: symmetric alpha=1 KS distance to the
//     standard Cauchy CDF < 0.002 at 1e6 draws; alpha=0.7 self-similarity
//     two-sample KS p-value > 0.001 at 1e5 vs 1e5.
void criterion_11() {
  const auto t0 = Clock::now();
  const double pi = std::acos(-1.0);

  const StableTriplet cauchy{1.0 / pi, 1.0 / pi, 1.0, 0.0};
  PhiloxStream rng_a(2024);
  std::vector<double> xs;
  xs.reserve(1000000);
  for (int i = 0; i < 1000000; ++i) xs.push_back(sample_stable_increment(cauchy, 1.0, rng_a));
  const double d_cauchy =
      ts::ks_statistic(std::move(xs), [](double x) { return ts::cauchy_cdf(x, 0.0, 1.0); });

  const StableTriplet symmetric{1.0, 1.0, 0.7, 0.0};
  const auto draw = [&](double t, unsigned seed) {
    PhiloxStream rng(seed);
    std::vector<double> out;
    out.reserve(100000);
    for (int i = 0; i < 100000; ++i) out.push_back(sample_stable_increment(symmetric, t, rng));
    return out;
  };
  auto small_t = draw(0.1, 7);
  const auto unit_t = draw(1.0, 8);
  for (auto& x : small_t) x /= std::pow(0.1, 1.0 / 0.7);
  const double d2 = ts::ks_two_sample_statistic(small_t, unit_t);
  const double p = ts::ks_two_sample_pvalue(d2, small_t.size(), unit_t.size());

  const bool ok = d_cauchy < 0.002 && p > 0.001;
  report(11, "stable sampler KS checks", ok, seconds_since(t0),
         strf("cauchy KS %.5f (< 0.002), self-similarity p %.4f (> 0.001)", d_cauchy, p));
}

// 12. Chunked streams make the estimate worker-count independent: fixed-seed
//     MC and MLMC reports agree bit-for-bit across 1, 4, and 8 workers.
void criterion_12() {
  const auto t0 = Clock::now();
  ModelParams params = preset_params("usdjpy_v2");
  params.horizon = 30.0 / 365.0;
  const TemperedStableModel model(params);
  const PayoffSpec payoff = PayoffSpec::up_and_out_call(100.0, 95.0, 102.0);

  const auto mc_at = [&](int threads) {
    EstimatorOptions options;
    options.fixed_mode = true;
    options.fixed_levels = 6;
    options.fixed_samples = 50000;
    options.seed = 7;
    options.threads = threads;
    return mc_estimate(model, payoff, options).estimate;
  };
  const auto mlmc_at = [&](int threads) {
    EstimatorOptions options;
    options.epsilon = 0.05;
    options.seed = 7;
    options.threads = threads;
    return mlmc_estimate(model, payoff, options).estimate;
  };

  const double m1 = mc_at(1), m4 = mc_at(4), m8 = mc_at(8);
  const double l1 = mlmc_at(1), l4 = mlmc_at(4), l8 = mlmc_at(8);
  const bool ok = m1 == m4 && m4 == m8 && l1 == l4 && l4 == l8;
  report(12, "worker-count determinism", ok, seconds_since(t0),
         strf("mc %.12e x3 %s, mlmc %.12e x3 %s", m1, (m1 == m4 && m4 == m8) ? "equal" : "DIFFER",
              l1, (l1 == l4 && l4 == l8) ? "equal" : "DIFFER"));
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  std::printf("acceptance: %d/12 criteria passed (%.1fs total)\n", 12 - g_failed,
              seconds_since(t0));
  return g_failed == 0 ? 0 : 1;
}
