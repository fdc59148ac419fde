#pragma once

// Analytic cost/complexity comparison tooling: stick-exponential sums, the
// rejection-cost aggregate Gamma_lambda(T), the SB-vs-TSB criterion including
// phi(rho), the SBG-comparison constants and region tests, and the MC-vs-MLMC
// accuracy threshold.

#include <map>
#include <string>

#include "tsb/model.hpp"
#include "tsb/payoffs.hpp"

namespace tsb {

struct ComparisonVerdict {
  std::string preferred;  // "TSB", "SB", or "SBG"
  std::map<std::string, double> criterion_values;
  std::string regime;  // "eps_to_zero" or "fixed_eps_T"
};

// sum_{k=1..n} E[e^{c l_k}] for a stick-breaking process on [0,1], via the
// series E[e^{c l_k}] = sum_j c^j (1+j)^{-k} / j! to relative tail 1e-14.
// Throws std::overflow_error for c > 700.
double stick_exp_sum(double c, int n);

// int_0^1 (e^{cx} - 1)/x dx = sum_{j>=1} c^j/(j! j).
double stick_integral(double c);

// Gamma_lambda(T) = sum over sides of (gamma T)/(1+(gamma T)^2) e^{gamma T};
// +infinity when an active side has alpha >= 1.
double gamma_big(const TemperedStableModel& model, double horizon);

// phi(rho) = log2(1 + rho/(1+rho)) on [0,1]; domain error outside.
double phi(double rho);

// Large-horizon complexity comparison: TSB preferred iff
// mu_{2 lambda} - 2 mu_lambda < max(gamma+, gamma-); when both tail indices
// coincide, also reports the equivalent alpha <= phi(rho) form with
// rho = min(c+- lambda+-^alpha) / max(c+- lambda+-^alpha).  Any side with
// alpha >= 1 makes SB inapplicable (TSB by default).
ComparisonVerdict sb_vs_tsb(const TemperedStableModel& model);

// Gaussian-approximation comparison at horizon T and accuracy eps: TSB
// preferred iff (1+T) e^{(mu_{2l}-2mu_l)T} stays below the beta*-dependent
// envelope C1 + C2 * {T, T log^2(1/eps), T eps^{-2(beta*-1)}}.
ComparisonVerdict sbg_vs_tsb(const TemperedStableModel& model, double horizon,
                             double epsilon);

// Accuracy threshold below which MLMC beats MC for a Lipschitz payoff:
// eps* = exp(-log(eta_1) S^2) with S = sum_k sqrt(k (2^-k - eta_1^-2k)).
double mc_vs_mlmc_threshold(const TemperedStableModel& model, PayoffClass payoff_class);
double mc_vs_mlmc_threshold_eta(double eta1);

}  // namespace tsb
