#include "tsb/payoffs.hpp"

#include <cmath>
#include <stdexcept>

namespace tsb {

PayoffSpec PayoffSpec::up_and_out_call(double s0, double strike, double barrier) {
  PayoffSpec spec;
  spec.kind = PayoffKind::up_and_out_call;
  spec.s0 = s0;
  spec.strike = strike;
  spec.barrier = barrier;
  return spec;
}

PayoffSpec PayoffSpec::ulcer(double s0) {
  PayoffSpec spec;
  spec.kind = PayoffKind::ulcer_integrand;
  spec.s0 = s0;
  return spec;
}

PayoffSpec PayoffSpec::modified_ulcer(double tau_cut, double s0) {
  PayoffSpec spec;
  spec.kind = PayoffKind::modified_ulcer_integrand;
  spec.tau_cut = tau_cut;
  spec.s0 = s0;
  return spec;
}

PayoffSpec PayoffSpec::supremum() {
  PayoffSpec spec;
  spec.kind = PayoffKind::lipschitz_sup;
  return spec;
}

PayoffClass payoff_class(const PayoffSpec& spec) {
  switch (spec.kind) {
    case PayoffKind::up_and_out_call:
      return PayoffClass::barrier_type1;
    case PayoffKind::ulcer_integrand:
      return PayoffClass::lipschitz;
    case PayoffKind::modified_ulcer_integrand:
      return PayoffClass::barrier_type2;
    case PayoffKind::lipschitz_sup:
      return PayoffClass::lipschitz;
    case PayoffKind::custom:
      return spec.custom_class;
  }
  throw std::logic_error("payoffs: unreachable kind");
}

std::string payoff_kind_name(PayoffKind kind) {
  switch (kind) {
    case PayoffKind::up_and_out_call: return "up_and_out_call";
    case PayoffKind::ulcer_integrand: return "ulcer_integrand";
    case PayoffKind::modified_ulcer_integrand: return "modified_ulcer_integrand";
    case PayoffKind::lipschitz_sup: return "lipschitz_sup";
    case PayoffKind::custom: return "custom";
  }
  throw std::logic_error("payoffs: unreachable kind");
}

double evaluate(const PayoffSpec& spec, const ChiCore& chi) {
  switch (spec.kind) {
    case PayoffKind::up_and_out_call: {
      // Non-strict barrier comparison; ties are measure-zero but fixed for
      // determinism.
      if (spec.s0 * std::exp(chi.sup) > spec.barrier) return 0.0;
      return std::max(spec.s0 * std::exp(chi.x_t) - spec.strike, 0.0);
    }
    case PayoffKind::ulcer_integrand: {
      const double r = std::expm1(chi.x_t - chi.sup);  // e^{x-sup} - 1 in (-1, 0]
      return r * r;
    }
    case PayoffKind::modified_ulcer_integrand: {
      if (!(chi.tau < spec.tau_cut)) return 0.0;
      const double r = std::expm1(chi.x_t - chi.sup);
      return r * r;
    }
    case PayoffKind::lipschitz_sup:
      return chi.sup;
    case PayoffKind::custom:
      if (!spec.custom_fn) throw std::invalid_argument("payoffs: custom payoff missing");
      return spec.custom_fn(chi);
  }
  throw std::logic_error("payoffs: unreachable kind");
}

double ulcer_index(double expectation) {
  if (expectation < 0.0) {
    throw std::domain_error("payoffs: ulcer index requires a nonnegative expectation");
  }
  return 100.0 * std::sqrt(expectation);
}

}  // namespace tsb
