#pragma once

// Exact sampling of stable increments via the Chambers-Mallows-Stuck
// construction, including Zolotarev's function and the (mu, varsigma, theta)
// parameter map for a two-sided power-law Lévy measure
//   nu(dx) = c_plus x^{-alpha-1} 1_{x>0} dx + c_minus |x|^{-alpha-1} 1_{x<0} dx
// with generating triplet (0, nu, b) relative to the cutoff 1_{(-1,1)}.

#include <cstdint>

#include "tsb/rng.hpp"

namespace tsb {

struct StableTriplet {
  double c_plus = 0.0;   // positive-tail intensity, >= 0
  double c_minus = 0.0;  // negative-tail intensity, >= 0
  double alpha = 0.5;    // stability index in (0,2)
  double b = 0.0;        // triplet drift w.r.t. cutoff 1_{(-1,1)}
};

struct StableMarginal {
  double alpha = 0.5;     // stability index in (0,2)
  double theta = 0.0;     // skew (c+ - c-)/(c+ + c-), in [-1,1]
  double mu = 0.0;        // location rate
  double varsigma = 1.0;  // scale rate, > 0
};

// Maps a generating triplet to the location/scale/skew parameters:
//   theta = (c+ - c-)/(c+ + c-);
//   alpha != 1: mu = b + (c- - c+)/(1-alpha), varsigma = -(c+ + c-)Gamma(-alpha)cos(pi alpha/2);
//   alpha == 1: mu = b + (1-euler_gamma)(c+ - c-), varsigma = (pi/2)(c+ + c-).
// Throws std::domain_error if c_plus = c_minus = 0 or alpha is outside (0,2).
StableMarginal marginal_from_triplet(const StableTriplet& t);

// Zolotarev's function
//   A_{a,r}(u) = (1 + theta^2 tan^2(pi a/2))^{1/(2a)}
//                * sin(a(r+u)) * cos(a r + (a-1)u)^{1/a - 1} / cos(u)^{1/a}.
// Throws std::domain_error if |u| >= pi/2.
double zolotarev_a(double a, double r, double u, double theta);

// CMS sampler with the marginal-dependent constants precomputed.  A draw
// consumes exactly two uniforms (redraws on the measure-zero cos-underflow
// guard aside).  The degenerate factory produces a sampler for the driftless
// point mass at zero that burns the same two uniforms per draw, so sample
// streams stay aligned across parameter sweeps where one tail intensity
// vanishes.
class CmsSampler {
 public:
  explicit CmsSampler(const StableMarginal& marginal);
  static CmsSampler degenerate();

  bool is_degenerate() const { return degenerate_; }
  const StableMarginal& marginal() const { return marginal_; }

  // One exact draw of Z_t; consumes two uniforms from `rng`.
  double sample(double t, PhiloxStream& rng) const;

  // Deterministic injection point used by tests: u_angle, u_exp are the two
  // (0,1) uniforms that sample() would have drawn.
  double from_uniforms(double t, double u_angle, double u_exp) const;

 private:
  CmsSampler() : degenerate_(true) {}

  StableMarginal marginal_{};
  bool degenerate_ = false;
  double delta_ = 0.0;      // arctan(theta tan(pi alpha/2))/alpha, alpha != 1
  double prefactor_ = 1.0;  // (1 + theta^2 tan^2(pi alpha/2))^{1/(2 alpha)}
  double inv_alpha_ = 1.0;
};

// One exact draw of Z_horizon for the process with triplet (0, nu, b).
// Consumes exactly two uniforms.
double sample_stable_increment(const StableTriplet& t, double horizon, PhiloxStream& rng);

}  // namespace tsb
