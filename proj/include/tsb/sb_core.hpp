#pragma once

// The tempered stick-breaking sampler: stick-breaking lengths, single-level
// draws of (chi_n, Y_T^{(+-)}, importance weight), and the coupled level-pair
// draws used by MLMC.
//
// A draw of chi_n splits [0,T] into sticks l_1..l_n plus a remainder L_n,
// samples one un-tempered increment per piece, and accumulates
//   chi_n = sum_k (xi_k, max(xi_k,0), l_k 1{xi_k>0}) + (zeta, max(zeta,0), L_n 1{zeta>0}).
// The importance weight exp(-lambda+ Y^+ + lambda- Y^- - mu_lambda T) retilts
// the un-tempered draws to the tempered law.

#include <cmath>
#include <cstdint>
#include <vector>

#include "tsb/model.hpp"
#include "tsb/rng.hpp"
#include "tsb/stable.hpp"

namespace tsb {

// Compensated (Neumaier) summation; the sticks shrink geometrically, so naive
// large-to-small addition would lose exactly the small terms the level
// coupling needs.
struct NeumaierSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

struct StickSequence {
  std::vector<double> lengths;  // l_1..l_n, each > 0
  double remainder = 0.0;       // L_n > 0
  double horizon = 0.0;         // T
};

// Deterministic stick construction from explicit uniforms (test injection):
// L_k = u_k L_{k-1}, l_k = L_{k-1} - L_k.
StickSequence sticks_from_uniforms(double horizon, const std::vector<double>& uniforms);

// Draws U_k from the open interval (0,1); consumes exactly n uniforms.
StickSequence sample_sticks(double horizon, int n, PhiloxStream& rng);

// The extrema triple (terminal value, supremum surrogate, argmax surrogate).
struct ChiCore {
  double x_t = 0.0;
  double sup = 0.0;
  double tau = 0.0;
};

struct ExtremaSample {
  double x_t = 0.0;
  double sup = 0.0;        // >= max(x_t, 0)
  double tau = 0.0;        // in [0, T]
  double y_plus = 0.0;     // sum of spectrally-positive component increments
  double y_minus = 0.0;    // sum of spectrally-negative component increments
  double log_weight = 0.0; // -lambda+ y_plus + lambda- y_minus - mu_lambda T
  int level = 1;           // n
  ChiCore chi() const { return {x_t, sup, tau}; }
};

// Coupled draw for the MLMC difference at levels (k-1, k); the terminal value
// and the weight are shared bit-for-bit between the two levels.
struct LevelPair {
  ChiCore chi_prev;
  ChiCore chi_curr;
  double y_plus = 0.0;
  double y_minus = 0.0;
  double log_weight = 0.0;
  int level = 2;  // k
};

// Assembles the triple from explicit per-stick increments and the remainder
// increment (test injection); accumulation runs remainder first, then sticks
// k = n..1, with compensated sums.
ChiCore assemble_chi(const StickSequence& sticks, const std::vector<double>& xi,
                     double zeta);

// Stateful sampler bound to one model; reusable scratch buffers make repeated
// draws allocation-free.  Stream consumption is fixed: per stick k the draws
// are U_k, xi_k^(+) (2 uniforms), xi_k^(-) (2 uniforms), eta_k (1 uniform);
// the remainder consumes the same five draws sans U_k.  Inactive sides and a
// zero Gaussian part still burn their draws, so alignment is
// parameter-independent.
class ChiSampler {
 public:
  explicit ChiSampler(const TemperedStableModel& model);

  ExtremaSample sample(int n, PhiloxStream& rng);
  LevelPair sample_pair(int k, PhiloxStream& rng);

  const TemperedStableModel& model() const { return *model_; }

 private:
  struct PieceDraws {
    double xi_plus = 0.0;
    double xi_minus = 0.0;
    double gauss = 0.0;  // eta_k = l_k b + sigma sqrt(l_k) Z
  };
  PieceDraws draw_piece(double length, PhiloxStream& rng) const;

  const TemperedStableModel* model_;
  CmsSampler plus_;
  CmsSampler minus_;
  double sigma_ = 0.0;
  double b_ = 0.0;
  std::vector<double> len_buf_;
  std::vector<PieceDraws> piece_buf_;
};

// One-shot conveniences over a fresh ChiSampler.
ExtremaSample sample_chi_n(const TemperedStableModel& model, int n, PhiloxStream& rng);
LevelPair couple_levels(const TemperedStableModel& model, int k, PhiloxStream& rng);

}  // namespace tsb
