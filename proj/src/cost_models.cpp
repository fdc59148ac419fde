#include "tsb/cost_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace tsb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// E[e^{c l_k}] = sum_{j>=0} c^j (1+j)^{-k} / j!, truncated at relative 1e-14.
double stick_exp_moment(double c, int k) {
  double term = 1.0;  // j = 0
  double sum = 1.0;
  for (int j = 1; j < 10000; ++j) {
    term *= c / j;
    const double contrib = term * std::pow(1.0 + j, -k);
    sum += contrib;
    if (j > c && contrib < 1e-14 * sum) break;
  }
  return sum;
}

}  // namespace

double stick_exp_sum(double c, int n) {
  if (n < 1) throw std::invalid_argument("cost_models: n must be at least 1");
  if (!(c >= 0.0)) throw std::invalid_argument("cost_models: c must be nonnegative");
  if (c > 700.0) throw std::overflow_error("cost_models: stick_exp_sum overflows for c > 700");
  double sum = 0.0;
  for (int k = 1; k <= n; ++k) sum += stick_exp_moment(c, k);
  return sum;
}

double stick_integral(double c) {
  if (!(c >= 0.0)) throw std::invalid_argument("cost_models: c must be nonnegative");
  if (c > 700.0) throw std::overflow_error("cost_models: stick_integral overflows for c > 700");
  double term = 1.0;
  double sum = 0.0;
  for (int j = 1; j < 10000; ++j) {
    term *= c / j;  // c^j / j!
    const double contrib = term / j;
    sum += contrib;
    if (j > c && contrib < 1e-15 * sum) break;
  }
  return sum;
}

double gamma_big(const TemperedStableModel& model, double horizon) {
  if (!(horizon > 0.0)) throw std::invalid_argument("cost_models: horizon must be positive");
  const auto& d = model.derived();
  if (std::isinf(d.gamma_plus) || std::isinf(d.gamma_minus)) return kInf;
  auto side = [horizon](double gamma) {
    const double g = gamma * horizon;
    return g == 0.0 ? 0.0 : g / (1.0 + g * g) * std::exp(g);
  };
  return side(d.gamma_plus) + side(d.gamma_minus);
}

double phi(double rho) {
  if (!(rho >= 0.0) || !(rho <= 1.0)) {
    throw std::domain_error("cost_models: phi requires rho in [0,1]");
  }
  return std::log2(1.0 + rho / (1.0 + rho));
}

ComparisonVerdict sb_vs_tsb(const TemperedStableModel& model) {
  const ModelParams& p = model.params();
  const auto& d = model.derived();
  ComparisonVerdict v;
  v.regime = "eps_to_zero";
  v.criterion_values["var_exponent"] = d.var_exponent;

  const bool plus_infinite = p.c_plus > 0.0 && p.alpha_plus >= 1.0;
  const bool minus_infinite = p.c_minus > 0.0 && p.alpha_minus >= 1.0;
  if (plus_infinite || minus_infinite) {
    // SB's rejection sampler needs finite variation on both active sides.
    v.preferred = "TSB";
    v.criterion_values["gamma_max"] = kInf;
    return v;
  }
  const double gamma_max = std::max(d.gamma_plus, d.gamma_minus);
  v.criterion_values["gamma_max"] = gamma_max;
  v.preferred = d.var_exponent < gamma_max ? "TSB" : "SB";

  if (p.c_plus > 0.0 && p.c_minus > 0.0 && p.alpha_plus == p.alpha_minus) {
    const double a = p.alpha_plus;
    const double wp = p.c_plus * std::pow(p.lambda_plus, a);
    const double wm = p.c_minus * std::pow(p.lambda_minus, a);
    const double hi = std::max(wp, wm);
    if (hi > 0.0) {
      const double rho = std::min(wp, wm) / hi;
      v.criterion_values["rho"] = rho;
      v.criterion_values["phi_rho"] = phi(rho);
      v.criterion_values["alpha"] = a;
    }
  }
  return v;
}

ComparisonVerdict sbg_vs_tsb(const TemperedStableModel& model, double horizon,
                             double epsilon) {
  if (!(horizon > 0.0)) throw std::invalid_argument("cost_models: horizon must be positive");
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw std::invalid_argument("cost_models: epsilon must lie in (0,1)");
  }
  ComparisonVerdict v;
  v.regime = "fixed_eps_T";
  const ModelParams& p = model.params();
  if (p.c_plus <= 0.0 && p.c_minus <= 0.0) {
    // No jump part: there is nothing for a Gaussian small-jump approximation
    // to approximate.
    v.preferred = "TSB";
    return v;
  }
  const auto& d = model.derived();
  const double bs = d.beta_star;
  const double r =
      bs == 1.0 ? 2.0 : (2.0 / std::fabs(bs - 1.0)) * std::log1p(std::fabs(bs - 1.0) / bs);
  const double c1 = std::exp(r * bs) / std::pow(1.0 - std::exp(r * (bs / 2.0 - 1.0)), 2.0);
  const double c2 = bs == 1.0 ? std::pow(std::numbers::e / 2.0, 2.0)
                              : std::exp(r * bs) / std::pow(1.0 - std::exp(r * (bs - 1.0)), 2.0);
  const double lhs = (1.0 + horizon) * std::exp(d.var_exponent * horizon);
  double rhs;
  if (bs < 1.0) {
    rhs = c1 + c2 * horizon;
  } else if (bs == 1.0) {
    const double l = std::log(1.0 / epsilon);
    rhs = c1 + c2 * horizon * l * l;
  } else {
    rhs = c1 + c2 * horizon * std::pow(epsilon, -2.0 * (bs - 1.0));
  }
  v.preferred = lhs < rhs ? "TSB" : "SBG";
  v.criterion_values["beta_star"] = bs;
  v.criterion_values["r"] = r;
  v.criterion_values["C1"] = c1;
  v.criterion_values["C2"] = c2;
  v.criterion_values["lhs"] = lhs;
  v.criterion_values["rhs"] = rhs;
  v.criterion_values["var_exponent"] = d.var_exponent;
  return v;
}

double mc_vs_mlmc_threshold_eta(double eta1) {
  if (!(eta1 > 1.0)) throw std::invalid_argument("cost_models: eta_1 must exceed 1");
  double s = 0.0;
  for (int k = 1; k <= 400; ++k) {
    const double term =
        k * (std::pow(2.0, -k) - std::pow(eta1, -2.0 * k));
    if (term <= 0.0 && k > 4) break;  // eta_1 < sqrt(2) tails go negative; stop
    if (term > 0.0) s += std::sqrt(term);
  }
  return std::exp(-std::log(eta1) * s * s);
}

double mc_vs_mlmc_threshold(const TemperedStableModel& model, PayoffClass payoff_class) {
  if (payoff_class != PayoffClass::lipschitz) {
    throw std::invalid_argument(
        "cost_models: the MC-vs-MLMC threshold closed form applies to Lipschitz payoffs");
  }
  return mc_vs_mlmc_threshold_eta(model.eta_p(1.0));
}

}  // namespace tsb
