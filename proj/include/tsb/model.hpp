#pragma once

// The tempered stable model container: parameter validation, the un-tempered
// drift b, the compensator constants mu_{s*lambda}, the activity indices
// (beta, beta*, alpha, alpha*), the geometric rates eta_p, and the
// rejection-cost constants gamma^{(+-)}.
//
// The Lévy measure is
//   nu_lambda(dx) = c+ e^{-lambda+ x} x^{-alpha+ - 1} 1_{x>0} dx
//                 + c- e^{-lambda- |x|} |x|^{-alpha- - 1} 1_{x<0} dx,
// with Gaussian variance sigma2 and drift b_lambda w.r.t. cutoff 1_{(-1,1)}.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tsb {

struct ModelParams {
  double sigma2 = 0.0;       // Gaussian variance sigma^2 >= 0
  double c_plus = 0.0;       // positive-tail intensity >= 0
  double c_minus = 0.0;      // negative-tail intensity >= 0
  double alpha_plus = 0.5;   // positive-tail index in (0,2); ignored if c_plus = 0
  double alpha_minus = 0.5;  // negative-tail index in (0,2); ignored if c_minus = 0
  double lambda_plus = 0.0;  // tempering rate >= 0
  double lambda_minus = 0.0; // tempering rate >= 0
  double b_lambda = 0.0;     // tempered drift, cutoff 1_{(-1,1)}
  double horizon = 1.0;      // T > 0
};

struct DerivedConstants {
  double b = 0.0;             // un-tempered drift
  double mu_lambda = 0.0;     // compensator constant of the importance weight
  double mu_2lambda = 0.0;    // same at doubled tempering rates
  double var_exponent = 0.0;  // mu_2lambda - 2 mu_lambda >= 0
  double mu_lambda_plus = 0.0;   // one-sided compensator, positive tail only
  double mu_lambda_minus = 0.0;  // one-sided compensator, negative tail only
  double gamma_plus = 0.0;   // rejection-cost rate; +infinity when alpha+ >= 1
  double gamma_minus = 0.0;  // rejection-cost rate; +infinity when alpha- >= 1
  double beta = 0.0;         // small-jump activity index
  double beta_star = 0.0;    // beta + delta enlargement
  double alpha_idx = 0.0;    // the index alpha in [beta, 2]
  double alpha_star = 0.0;   // alpha + (beta* - beta) 1{alpha = beta}
  double delta_choice = 0.0; // the delta used in beta*
};

// Un-tempered drift b = b_lambda - c+ B_{alpha+,lambda+} + c- B_{alpha-,lambda-}.
double derive_b(const ModelParams& p);

// mu_{scale*lambda} = c+ C_{alpha+, scale*lambda+} + c- C_{alpha-, scale*lambda-}.
double derive_mu(const ModelParams& p, double scale);

// gamma^{(+-)} = -c± lambda±^{alpha±} Gamma(-alpha±) for alpha± < 1,
// +infinity on an active infinite-variation side, 0 on an inactive side.
std::pair<double, double> derive_gamma_pm(const ModelParams& p);

// Immutable model; derived constants are computed eagerly at construction.
// Construction throws std::invalid_argument on invalid parameters, naming the
// violated requirement.  delta <= 0 requests the default enlargement
// min(0.01, (2-beta)/2, (1-beta)/2 if beta < 1).
class TemperedStableModel {
 public:
  explicit TemperedStableModel(const ModelParams& params, double delta = 0.0);

  const ModelParams& params() const { return params_; }
  const DerivedConstants& derived() const { return derived_; }
  double horizon() const { return params_.horizon; }

  // Geometric L^p rate eta_p = 1 + 1{p > alpha} + (p/alpha*) 1{p <= alpha}.
  double eta_p(double p) const;

  // Construction-time notes (e.g. b classified as zero within tolerance).
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  ModelParams params_;
  DerivedConstants derived_;
  std::vector<std::string> warnings_;
};

// Built-in parameter presets: usdjpy_v1, usdjpy_v2, mcd, bix, sox.
// Throws std::invalid_argument for unknown names.
ModelParams preset_params(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace tsb
