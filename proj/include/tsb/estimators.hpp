#pragma once

// MC and MLMC estimation: the sample-allocation rule
//   N_k = ceil(2 eps^-2 sqrt(V_k/k) sum_j sqrt(j V_j)),
// CLT confidence intervals, bias-policy selection of the level count n(eps),
// and the exponential-martingale control-variate scheme.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsb/model.hpp"
#include "tsb/payoffs.hpp"
#include "tsb/sb_core.hpp"

namespace tsb {

// Scalar running moments (Welford update, Chan parallel merge).
struct MomentAccumulator {
  long long count = 0;
  double mean = 0.0;
  double m2 = 0.0;  // centered second moment sum

  void add(double x);
  void merge(const MomentAccumulator& other);
  double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
};

// Joint running moments of the 4-vector (g*W, W, W+, W-) where W is the
// importance weight and W+- are the one-sided unit-mean martingales used as
// control variates.
struct Vec4Accumulator {
  long long count = 0;
  std::array<double, 4> mean{};
  std::array<double, 16> scatter{};  // centered cross-products, row-major

  void add(const std::array<double, 4>& v);
  void merge(const Vec4Accumulator& other);
  double covariance(int i, int j) const;
  double variance(int i) const { return covariance(i, i); }
};

enum class BiasPolicy { clt_rate, bias_extrapolation };
enum class EstimatorKind { mc, mlmc };

struct EstimatorOptions {
  double epsilon = 0.05;        // target RMSE (accuracy mode)
  bool fixed_mode = false;      // explicit (n, N) instead of epsilon
  int fixed_levels = 0;
  long long fixed_samples = 0;
  BiasPolicy policy = BiasPolicy::clt_rate;
  double margin = 0.1;          // CLT_RATE safety margin on 1/log(eta_g)
  double confidence_level = 0.95;
  bool control_variates = false;
  bool paper_weights = false;   // doubled-diagonal weight system variant
  std::uint64_t seed = 1;
  int threads = 1;
  long long chunk_size = 4096;  // fixed chunking keeps estimates worker-count independent
  long long pilot_floor = 10000;
};

struct LevelStats {
  int level = 1;
  long long samples = 0;
  double mean = 0.0;      // per-sample level mean (control variates applied)
  double variance = 0.0;  // per-sample variance used in the CI
  double cost_units = 0.0;
  std::array<double, 3> cv_weights{};
};

struct ControlVariateInfo {
  std::array<double, 3> weights{};  // (w0, w+, w-); level-1 weights for MLMC
  double variance_without = 0.0;    // estimator variance, weights = 0
  double variance_with = 0.0;       // estimator variance, fitted weights
  bool in_sample = true;            // weights fitted on the estimation sample
};

struct EstimateReport {
  EstimatorKind kind = EstimatorKind::mc;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double confidence_level = 0.95;
  double epsilon = 0.0;  // requested accuracy; 0 in fixed mode
  int levels = 0;        // n
  std::vector<LevelStats> level_stats;
  double total_cost_units = 0.0;  // (k+1)-weighted count of generated samples
  std::optional<ControlVariateInfo> control_variates;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;
};

// Level-count selection.  CLT_RATE: n = ceil((1+margin)/log(eta_g) * log(1/eps))
// with the class rate eta_g (Lipschitz: eta_1; barrier type 1: 2^{1/(1+alpha*)};
// barrier type 2: e^{1/e}).  BIAS_EXTRAPOLATION fits log|mean D_k| on the
// supplied pilot means and picks the smallest n whose predicted geometric bias
// tail is at most eps/sqrt(2).
int choose_levels(BiasPolicy policy, double epsilon, PayoffClass payoff_class,
                  const TemperedStableModel& model, double margin = 0.1,
                  const std::vector<double>& pilot_level_means = {});

// The geometric error rate eta_g of a payoff class under the model.
double class_rate(PayoffClass payoff_class, const TemperedStableModel& model);

// Variance-minimizing weights for
//   ztilde = gW - w0 (W - 1) - w+ (W+ - 1) - w- (W- - 1),
// solving the 3x3 system Sigma w = c; the paper_weights variant doubles the
// diagonal.  A singular system yields zero weights plus a warning.
std::array<double, 3> control_variate_weights(const Vec4Accumulator& moments,
                                              bool paper_weights = false,
                                              std::vector<std::string>* warnings = nullptr);

// estimate +- z_{(1+level)/2} sqrt(variance_of_estimator).
std::pair<double, double> clt_ci(double estimate, double variance_of_estimator,
                                 double level);

EstimateReport mc_estimate(const TemperedStableModel& model, const PayoffSpec& payoff,
                           const EstimatorOptions& options);
EstimateReport mlmc_estimate(const TemperedStableModel& model, const PayoffSpec& payoff,
                             const EstimatorOptions& options);

// Pilot + allocation only (no estimation pass); used to inspect N_k.
struct MlmcPlan {
  int levels = 0;
  long long pilot_samples = 0;
  std::vector<long long> samples_per_level;
  std::vector<double> pilot_means;
  std::vector<double> pilot_variances;
  std::vector<std::string> warnings;
};
MlmcPlan plan_mlmc(const TemperedStableModel& model, const PayoffSpec& payoff,
                   const EstimatorOptions& options);

// Per-level coupled-difference diagnostics at a fixed sample count
// (level 1 is the plain level-1 draw): mean, variance, cost per level.
std::vector<LevelStats> level_diagnostics(const TemperedStableModel& model,
                                          const PayoffSpec& payoff, int max_level,
                                          long long samples, std::uint64_t seed,
                                          int threads = 1);

}  // namespace tsb
