#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "tsb/payoffs.hpp"
#include "tsb/rng.hpp"

using namespace tsb;

TEST_CASE("up-and-out call hand values") {
  auto spec = PayoffSpec::up_and_out_call(100.0, 95.0, 102.0);
  CHECK(evaluate(spec, {0.0, 0.0, 0.0}) == doctest::Approx(5.0).epsilon(1e-15));

  // Supremum breaches the barrier: knocked out even though x_T is in the money.
  CHECK(evaluate(spec, {0.05, 0.05, 0.1}) == 0.0);

  // Below the barrier, the vanilla payoff applies.
  double x = 0.01;
  CHECK(evaluate(spec, {x, 0.015, 0.1}) ==
        doctest::Approx(100.0 * std::exp(x) - 95.0).epsilon(1e-15));

  // Out of the money.
  CHECK(evaluate(spec, {-0.2, 0.0, 0.0}) == 0.0);

  // Ties sit on the survival side: knock-out requires a strict breach.
  auto at_barrier = PayoffSpec::up_and_out_call(100.0, 95.0, 100.0);
  CHECK(evaluate(at_barrier, {0.0, 0.0, 0.0}) == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("ulcer integrands") {
  auto ulcer = PayoffSpec::ulcer();
  // Supremum attained at the terminal value: zero drawdown.
  CHECK(evaluate(ulcer, {0.03, 0.03, 0.2}) == 0.0);

  double x = -0.1, sup = 0.05;
  double r = std::exp(x - sup) - 1.0;
  CHECK(evaluate(ulcer, {x, sup, 0.2}) == doctest::Approx(r * r).epsilon(1e-12));

  // The time cut gates the modified integrand on tau < s.
  auto mod = PayoffSpec::modified_ulcer(0.1);
  CHECK(evaluate(mod, {x, sup, 0.05}) == doctest::Approx(r * r).epsilon(1e-12));
  CHECK(evaluate(mod, {x, sup, 0.1}) == 0.0);   // boundary counts as "not before"
  CHECK(evaluate(mod, {x, sup, 0.15}) == 0.0);
}

TEST_CASE("payoff bounds over random triples") {
  auto uoc = PayoffSpec::up_and_out_call(100.0, 95.0, 102.0);
  auto ulcer = PayoffSpec::ulcer();
  auto mod = PayoffSpec::modified_ulcer(0.07);
  auto sup_p = PayoffSpec::supremum();
  PhiloxStream rng(21);
  const double T = 0.2;
  for (int i = 0; i < 50000; ++i) {
    // Random valid triple: sup >= max(x_t, 0), tau in [0, T].
    double x_t = 0.4 * (rng.uniform01() - 0.5);
    double sup = std::max(x_t, 0.0) + 0.2 * rng.uniform01();
    double tau = T * rng.uniform01();
    ChiCore chi{x_t, sup, tau};

    double v = evaluate(uoc, chi);
    CHECK(v >= 0.0);
    CHECK(v <= 102.0 - 95.0 + 1e-12);  // in the money only below the barrier

    double u = evaluate(ulcer, chi);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    double mu = evaluate(mod, chi);
    CHECK(mu <= u);
    CHECK((mu == 0.0 || mu == u));

    CHECK(evaluate(sup_p, chi) == sup);
  }
}

TEST_CASE("ulcer index map") {
  CHECK(ulcer_index(0.0) == 0.0);
  CHECK(ulcer_index(0.25) == doctest::Approx(50.0).epsilon(1e-15));
  CHECK(ulcer_index(1.0) == doctest::Approx(100.0).epsilon(1e-15));
  CHECK(ulcer_index(0.0013603356) == doctest::Approx(3.68828).epsilon(1e-5));
  CHECK_THROWS_AS(ulcer_index(-1e-12), std::domain_error);
}

TEST_CASE("payoff classes and names") {
  CHECK(payoff_class(PayoffSpec::up_and_out_call(100, 95, 102)) ==
        PayoffClass::barrier_type1);
  CHECK(payoff_class(PayoffSpec::ulcer()) == PayoffClass::lipschitz);
  CHECK(payoff_class(PayoffSpec::modified_ulcer(0.1)) == PayoffClass::barrier_type2);
  CHECK(payoff_class(PayoffSpec::supremum()) == PayoffClass::lipschitz);

  CHECK(payoff_kind_name(PayoffKind::up_and_out_call) == "up_and_out_call");
  CHECK(payoff_kind_name(PayoffKind::ulcer_integrand) == "ulcer_integrand");
  CHECK(payoff_kind_name(PayoffKind::modified_ulcer_integrand) ==
        "modified_ulcer_integrand");
  CHECK(payoff_kind_name(PayoffKind::lipschitz_sup) == "lipschitz_sup");
}

TEST_CASE("custom payoffs") {
  PayoffSpec spec;
  spec.kind = PayoffKind::custom;
  spec.custom_fn = [](const ChiCore& chi) { return chi.tau * 2.0; };
  spec.custom_class = PayoffClass::barrier_type2;
  CHECK(evaluate(spec, {0.0, 0.1, 0.3}) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(payoff_class(spec) == PayoffClass::barrier_type2);

  PayoffSpec missing;
  missing.kind = PayoffKind::custom;
  CHECK_THROWS_AS(evaluate(missing, {0.0, 0.0, 0.0}), std::invalid_argument);
}
