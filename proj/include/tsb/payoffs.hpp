#pragma once

// Payoff functions g(chi) over the extrema triple and the exponential-model
// wrapper S = S0 e^X, plus the ulcer-index map 100 sqrt(E[g]).

#include <functional>
#include <string>

#include "tsb/sb_core.hpp"

namespace tsb {

enum class PayoffKind {
  up_and_out_call,          // max(S0 e^{x_T} - K, 0) 1{S0 e^{sup} <= M}
  ulcer_integrand,          // (e^{x_T - sup} - 1)^2
  modified_ulcer_integrand, // (e^{x_T - sup} - 1)^2 1{tau < s}
  lipschitz_sup,            // sup (test payoff)
  custom,
};

// Error-decay class of the payoff, driving the level-selection rate.
enum class PayoffClass {
  lipschitz,      // Lipschitz functions of the triple
  barrier_type1,  // discontinuity on a {sup = const} barrier
  barrier_type2,  // discontinuity on a {tau = const} time cut
};

struct PayoffSpec {
  PayoffKind kind = PayoffKind::lipschitz_sup;
  double s0 = 100.0;      // spot, > 0
  double strike = 95.0;   // K > 0 (barrier kinds)
  double barrier = 102.0; // M > 0
  double tau_cut = 0.0;   // s in (0,T) (modified ulcer)
  std::function<double(const ChiCore&)> custom_fn;  // pure; kind == custom
  PayoffClass custom_class = PayoffClass::lipschitz;

  static PayoffSpec up_and_out_call(double s0, double strike, double barrier);
  static PayoffSpec ulcer(double s0 = 100.0);
  static PayoffSpec modified_ulcer(double tau_cut, double s0 = 100.0);
  static PayoffSpec supremum();
};

PayoffClass payoff_class(const PayoffSpec& spec);

// Human-readable kind name (CLI/report plumbing).
std::string payoff_kind_name(PayoffKind kind);

double evaluate(const PayoffSpec& spec, const ChiCore& chi);

// Ulcer index 100 sqrt(expectation); domain error for negative input.
double ulcer_index(double expectation);

}  // namespace tsb
