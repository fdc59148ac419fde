#pragma once

// Adaptive numerical integration used as an independent oracle by the test
// suite and the `validate` CLI command.  Two unrelated subdivision strategies
// (globally adaptive Gauss-Kronrod and recursive adaptive Simpson) are
// provided so results can be cross-checked against each other.

#include <functional>

namespace tsb::quadrature {

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 4000;
};

// Globally adaptive 15-point Gauss-Kronrod on a finite interval.
// Throws std::runtime_error if the tolerance is not reached.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opt = {});

// int_a^inf f(x) dx via the rational map x = a + t/(1-t).
double integrate_to_inf(const std::function<double(double)>& f, double a,
                        const Options& opt = {});

// int_0^b f(x) dx where f(x) ~ x^{-s} as x -> 0+ with s < 1 (integrable
// endpoint singularity).  Substitutes x = u^{1/(1-s)}, which removes the
// singularity exactly for pure power laws.
double integrate_power_singularity(const std::function<double(double)>& f,
                                   double b, double s, const Options& opt = {});

// Independent second strategy (recursive adaptive Simpson with Richardson
// touch-up) for oracle self-consistency checks.
double integrate_simpson(const std::function<double(double)>& f, double a,
                         double b, const Options& opt = {});

}  // namespace tsb::quadrature
