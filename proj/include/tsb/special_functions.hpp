#pragma once

// Special functions backing the tempered-stable drift/compensator algebra:
// incomplete gamma functions (including negative non-integer first argument),
// the exponential integral E1, and the two exponential-moment primitives
//
//   B_{a,r} = int_0^1   (e^{-rx} - 1)                   x^{-a}   dx
//   C_{a,r} = int_0^inf (e^{-rx} - 1 + r x 1_{(0,1)}(x)) x^{-a-1} dx
//
// which express the un-tempered drift b and the compensator constant
// mu_lambda in closed form.
//
// All functions are pure and total on their stated domains; NaN or
// out-of-domain inputs raise std::domain_error instead of propagating.

namespace tsb {

inline constexpr double euler_gamma = 0.5772156649015328606065120900824024;

// gamma(a,r) = int_0^r e^{-x} x^{a-1} dx.  Requires a > 0, r >= 0.
double lower_inc_gamma(double a, double r);

// Gamma(a,r) = int_r^inf e^{-x} x^{a-1} dx.  Negative non-integer a is
// reached via the recurrence Gamma(a,r) = (Gamma(a+1,r) - r^a e^{-r}) / a;
// a <= 0 requires r > 0 and excludes non-positive integers.
double upper_inc_gamma(double a, double r);

// E1(r) = int_r^inf e^{-x} x^{-1} dx, r > 0.
double exp_integral_e1(double r);

// B_{a,r} for a in (0,2), r >= 0.  B_{a,0} = 0.
double b_const(double a, double r);

// C_{a,r} for a in (0,2), r >= 0.  C_{a,0} = 0.
double c_const(double a, double r);

}  // namespace tsb
