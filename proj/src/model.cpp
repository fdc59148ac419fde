#include "tsb/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tsb/special_functions.hpp"

namespace tsb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDriftZeroTol = 1e-12;

void validate(const ModelParams& p) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("model: " + msg); };
  if (!(p.sigma2 >= 0.0)) fail("sigma2 must be nonnegative");
  if (!(p.c_plus >= 0.0) || !(p.c_minus >= 0.0)) fail("tail intensities must be nonnegative");
  if (p.c_plus + p.c_minus <= 0.0 && p.sigma2 <= 0.0) {
    fail("degenerate process: need c_plus + c_minus > 0 or sigma2 > 0");
  }
  if (p.c_plus > 0.0 && (!(p.alpha_plus > 0.0) || !(p.alpha_plus < 2.0))) {
    fail("alpha_plus must lie in (0,2)");
  }
  if (p.c_minus > 0.0 && (!(p.alpha_minus > 0.0) || !(p.alpha_minus < 2.0))) {
    fail("alpha_minus must lie in (0,2)");
  }
  if (!(p.lambda_plus >= 0.0) || !(p.lambda_minus >= 0.0)) {
    fail("tempering rates must be nonnegative");
  }
  if (p.lambda_plus == 0.0 && p.lambda_minus == 0.0) {
    fail("standing assumption violated: the tempering vector (lambda_plus, lambda_minus) "
         "must be different from the origin");
  }
  if (!(p.horizon > 0.0)) fail("horizon must be positive");
  if (!std::isfinite(p.b_lambda)) fail("b_lambda must be finite");
}

// Normalizes the unused tail index of an inactive side to the default 0.5 so
// downstream index computations never consult a stale value.
ModelParams normalized(ModelParams p) {
  if (p.c_plus <= 0.0) p.alpha_plus = 0.5;
  if (p.c_minus <= 0.0) p.alpha_minus = 0.5;
  return p;
}

}  // namespace

double derive_b(const ModelParams& p) {
  double b = p.b_lambda;
  if (p.c_plus > 0.0) b -= p.c_plus * b_const(p.alpha_plus, p.lambda_plus);
  if (p.c_minus > 0.0) b += p.c_minus * b_const(p.alpha_minus, p.lambda_minus);
  return b;
}

double derive_mu(const ModelParams& p, double scale) {
  if (!(scale >= 0.0)) throw std::invalid_argument("model: scale must be nonnegative");
  double mu = 0.0;
  if (p.c_plus > 0.0) mu += p.c_plus * c_const(p.alpha_plus, scale * p.lambda_plus);
  if (p.c_minus > 0.0) mu += p.c_minus * c_const(p.alpha_minus, scale * p.lambda_minus);
  return mu;
}

std::pair<double, double> derive_gamma_pm(const ModelParams& p) {
  auto one_side = [](double c, double alpha, double lambda) -> double {
    if (c <= 0.0 || lambda <= 0.0) return 0.0;
    if (alpha >= 1.0) return kInf;  // infinite-variation side: integral diverges
    // -Gamma(-alpha) = -Gamma(2-alpha)/((-alpha)(1-alpha)) > 0 on (0,1)
    const double neg_gamma = std::tgamma(2.0 - alpha) / (alpha * (1.0 - alpha));
    return c * std::pow(lambda, alpha) * neg_gamma;
  };
  return {one_side(p.c_plus, p.alpha_plus, p.lambda_plus),
          one_side(p.c_minus, p.alpha_minus, p.lambda_minus)};
}

TemperedStableModel::TemperedStableModel(const ModelParams& params, double delta)
    : params_(normalized(params)) {
  validate(params_);
  const ModelParams& p = params_;

  derived_.b = derive_b(p);
  derived_.mu_lambda = derive_mu(p, 1.0);
  derived_.mu_2lambda = derive_mu(p, 2.0);
  derived_.var_exponent = derived_.mu_2lambda - 2.0 * derived_.mu_lambda;
  derived_.mu_lambda_plus =
      p.c_plus > 0.0 ? p.c_plus * c_const(p.alpha_plus, p.lambda_plus) : 0.0;
  derived_.mu_lambda_minus =
      p.c_minus > 0.0 ? p.c_minus * c_const(p.alpha_minus, p.lambda_minus) : 0.0;
  std::tie(derived_.gamma_plus, derived_.gamma_minus) = derive_gamma_pm(p);

  // beta = max tail index over the active sides (0 for a pure-Gaussian model).
  double beta = 0.0;
  const bool has_jumps = p.c_plus > 0.0 || p.c_minus > 0.0;
  if (p.c_plus > 0.0) beta = std::max(beta, p.alpha_plus);
  if (p.c_minus > 0.0) beta = std::max(beta, p.alpha_minus);
  derived_.beta = beta;

  double delta_choice = delta;
  if (delta_choice <= 0.0) {
    delta_choice = std::min(0.01, (2.0 - beta) / 2.0);
    if (beta < 1.0) delta_choice = std::min(delta_choice, (1.0 - beta) / 2.0);
  }
  if (!(delta_choice > 0.0) || !(delta_choice < 2.0 - beta)) {
    throw std::invalid_argument("model: delta must lie in (0, 2 - beta)");
  }
  if (beta < 1.0 && beta + delta_choice >= 1.0) {
    throw std::invalid_argument("model: delta must keep beta + delta below 1 when beta < 1");
  }
  derived_.delta_choice = delta_choice;
  // The governing small-jump integral diverges at beta for any active
  // power-law side, so beta* takes the enlargement; a pure-Gaussian model
  // keeps beta* = beta.
  derived_.beta_star = has_jumps ? beta + delta_choice : beta;

  const bool finite_variation =
      (p.c_plus <= 0.0 || p.alpha_plus < 1.0) && (p.c_minus <= 0.0 || p.alpha_minus < 1.0);
  const bool drift_nonzero = std::fabs(derived_.b) > kDriftZeroTol;
  if (has_jumps && finite_variation && !drift_nonzero && std::fabs(derived_.b) > 0.0) {
    warnings_.push_back("un-tempered drift b is within 1e-12 of zero; classified as b = 0 "
                        "for the index alpha");
  }
  double alpha_idx;
  if (p.sigma2 > 0.0) {
    alpha_idx = 2.0;
  } else if (finite_variation && drift_nonzero) {
    alpha_idx = 1.0;
  } else {
    alpha_idx = beta;
  }
  derived_.alpha_idx = alpha_idx;
  derived_.alpha_star =
      alpha_idx + (alpha_idx == beta ? derived_.beta_star - beta : 0.0);
}

double TemperedStableModel::eta_p(double p) const {
  if (!(p > 0.0)) throw std::invalid_argument("model: eta_p requires p > 0");
  if (p > derived_.alpha_idx) return 2.0;
  return 1.0 + p / derived_.alpha_star;
}

ModelParams preset_params(std::string_view name) {
  // Rows: sigma, alpha (both sides), c+, c-, lambda+, lambda-; b_lambda = 0.
  auto make = [](double sigma, double alpha, double cp, double cm, double lp,
                 double lm) {
    ModelParams p;
    p.sigma2 = sigma * sigma;
    p.alpha_plus = p.alpha_minus = alpha;
    p.c_plus = cp;
    p.c_minus = cm;
    p.lambda_plus = lp;
    p.lambda_minus = lm;
    p.b_lambda = 0.0;
    return p;
  };
  if (name == "usdjpy_v1") return make(0.0007, 0.66, 0.1305, 0.0615, 6.5022, 3.0888);
  if (name == "usdjpy_v2") return make(0.0001, 1.5, 0.0069, 0.0063, 1.932, 0.4087);
  if (name == "mcd") return make(0.0, 1.50683, 0.08, 0.08, 25.4, 25.4);
  if (name == "bix") return make(0.0, 1.2341, 0.32, 0.32, 37.42, 47.76);
  if (name == "sox") return make(0.0, 1.3814, 0.44, 0.44, 34.73, 34.76);
  throw std::invalid_argument("model: unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
  return {"usdjpy_v1", "usdjpy_v2", "mcd", "bix", "sox"};
}

}  // namespace tsb
