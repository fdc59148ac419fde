#include "tsb/sb_core.hpp"

#include <algorithm>
#include <stdexcept>

namespace tsb {

StickSequence sticks_from_uniforms(double horizon, const std::vector<double>& uniforms) {
  if (!(horizon > 0.0)) throw std::invalid_argument("sb_core: horizon must be positive");
  if (uniforms.empty()) throw std::invalid_argument("sb_core: need at least one stick");
  StickSequence s;
  s.horizon = horizon;
  s.lengths.reserve(uniforms.size());
  double remaining = horizon;
  for (double u : uniforms) {
    if (!(u > 0.0) || !(u < 1.0)) {
      throw std::invalid_argument("sb_core: stick uniforms must lie in (0,1)");
    }
    const double next = u * remaining;
    s.lengths.push_back(remaining - next);
    remaining = next;
  }
  s.remainder = remaining;
  return s;
}

StickSequence sample_sticks(double horizon, int n, PhiloxStream& rng) {
  if (n < 1) throw std::invalid_argument("sb_core: need at least one stick");
  std::vector<double> us(static_cast<std::size_t>(n));
  for (double& u : us) u = rng.open01();
  return sticks_from_uniforms(horizon, us);
}

ChiCore assemble_chi(const StickSequence& sticks, const std::vector<double>& xi,
                     double zeta) {
  if (xi.size() != sticks.lengths.size()) {
    throw std::invalid_argument("sb_core: one increment per stick required");
  }
  NeumaierSum x_sum, sup_sum, tau_sum;
  auto add = [&](double increment, double length) {
    x_sum.add(increment);
    if (increment > 0.0) {
      sup_sum.add(increment);
      tau_sum.add(length);
    }
  };
  add(zeta, sticks.remainder);
  for (std::size_t j = xi.size(); j-- > 0;) add(xi[j], sticks.lengths[j]);
  ChiCore chi;
  chi.x_t = x_sum.value();
  chi.sup = std::max({sup_sum.value(), chi.x_t, 0.0});
  chi.tau = std::clamp(tau_sum.value(), 0.0, sticks.horizon);
  return chi;
}

ChiSampler::ChiSampler(const TemperedStableModel& model)
    : model_(&model),
      plus_(model.params().c_plus > 0.0
                ? CmsSampler(marginal_from_triplet(
                      {model.params().c_plus, 0.0, model.params().alpha_plus, 0.0}))
                : CmsSampler::degenerate()),
      minus_(model.params().c_minus > 0.0
                 ? CmsSampler(marginal_from_triplet(
                       {0.0, model.params().c_minus, model.params().alpha_minus, 0.0}))
                 : CmsSampler::degenerate()),
      sigma_(std::sqrt(model.params().sigma2)),
      b_(model.derived().b) {}

ChiSampler::PieceDraws ChiSampler::draw_piece(double length, PhiloxStream& rng) const {
  PieceDraws d;
  d.xi_plus = plus_.sample(length, rng);
  d.xi_minus = minus_.sample(length, rng);
  // The Gaussian slot burns its uniform even when sigma = 0 so that stream
  // alignment does not depend on the parameters.
  const double u = rng.open01();
  d.gauss = length * b_;
  if (sigma_ > 0.0) d.gauss += sigma_ * std::sqrt(length) * detail::inverse_normal_cdf(u);
  return d;
}

namespace {

struct LevelTotals {
  double x_t = 0.0;
  double sup = 0.0;
  double tau = 0.0;
  double y_plus = 0.0;
  double y_minus = 0.0;
};

}  // namespace

ExtremaSample ChiSampler::sample(int n, PhiloxStream& rng) {
  if (n < 1) throw std::invalid_argument("sb_core: level n must be at least 1");
  const double horizon = model_->horizon();
  len_buf_.resize(static_cast<std::size_t>(n));
  piece_buf_.resize(static_cast<std::size_t>(n) + 1);
  double remaining = horizon;
  for (int k = 0; k < n; ++k) {
    const double u = rng.open01();
    const double next = u * remaining;
    len_buf_[static_cast<std::size_t>(k)] = remaining - next;
    remaining = next;
    piece_buf_[static_cast<std::size_t>(k)] =
        draw_piece(len_buf_[static_cast<std::size_t>(k)], rng);
  }
  piece_buf_[static_cast<std::size_t>(n)] = draw_piece(remaining, rng);

  // Accumulate remainder first, then sticks k = n..1 (geometrically smallest
  // on average go first).
  NeumaierSum x_sum, sup_sum, tau_sum, yp_sum, ym_sum;
  auto add = [&](const PieceDraws& d, double length) {
    const double xi = d.xi_plus + d.xi_minus + d.gauss;
    x_sum.add(xi);
    if (xi > 0.0) {
      sup_sum.add(xi);
      tau_sum.add(length);
    }
    yp_sum.add(d.xi_plus);
    ym_sum.add(d.xi_minus);
  };
  add(piece_buf_[static_cast<std::size_t>(n)], remaining);
  for (int k = n - 1; k >= 0; --k) {
    add(piece_buf_[static_cast<std::size_t>(k)], len_buf_[static_cast<std::size_t>(k)]);
  }

  ExtremaSample s;
  s.x_t = x_sum.value();
  s.sup = std::max({sup_sum.value(), s.x_t, 0.0});
  s.tau = std::clamp(tau_sum.value(), 0.0, horizon);
  s.y_plus = yp_sum.value();
  s.y_minus = ym_sum.value();
  const ModelParams& p = model_->params();
  s.log_weight = -p.lambda_plus * s.y_plus + p.lambda_minus * s.y_minus -
                 model_->derived().mu_lambda * horizon;
  s.level = n;
  return s;
}

LevelPair ChiSampler::sample_pair(int k, PhiloxStream& rng) {
  if (k < 2) throw std::invalid_argument("sb_core: coupled levels require k >= 2");
  const double horizon = model_->horizon();
  const auto n = static_cast<std::size_t>(k);
  len_buf_.resize(n);
  piece_buf_.resize(n + 1);
  double remaining = horizon;
  for (std::size_t j = 0; j < n; ++j) {
    const double u = rng.open01();
    const double next = u * remaining;
    len_buf_[j] = remaining - next;
    remaining = next;
    piece_buf_[j] = draw_piece(len_buf_[j], rng);
  }
  piece_buf_[n] = draw_piece(remaining, rng);

  // Level k-1 merges the k-th stick into the remainder; the merged grouping
  // also yields the terminal value and Y totals shared by both levels.
  PieceDraws merged;
  merged.xi_plus = piece_buf_[n].xi_plus + piece_buf_[n - 1].xi_plus;
  merged.xi_minus = piece_buf_[n].xi_minus + piece_buf_[n - 1].xi_minus;
  merged.gauss = piece_buf_[n].gauss + piece_buf_[n - 1].gauss;
  const double merged_len = remaining + len_buf_[n - 1];

  auto reduce = [&](const PieceDraws& rem, double rem_len, std::size_t sticks) {
    NeumaierSum x_sum, sup_sum, tau_sum, yp_sum, ym_sum;
    auto add = [&](const PieceDraws& d, double length) {
      const double xi = d.xi_plus + d.xi_minus + d.gauss;
      x_sum.add(xi);
      if (xi > 0.0) {
        sup_sum.add(xi);
        tau_sum.add(length);
      }
      yp_sum.add(d.xi_plus);
      ym_sum.add(d.xi_minus);
    };
    add(rem, rem_len);
    for (std::size_t j = sticks; j-- > 0;) add(piece_buf_[j], len_buf_[j]);
    LevelTotals t;
    t.x_t = x_sum.value();
    t.sup = sup_sum.value();
    t.tau = tau_sum.value();
    t.y_plus = yp_sum.value();
    t.y_minus = ym_sum.value();
    return t;
  };

  const LevelTotals prev = reduce(merged, merged_len, n - 1);
  const LevelTotals curr = reduce(piece_buf_[n], remaining, n);

  LevelPair pair;
  pair.level = k;
  // Terminal value and Y totals come from the merged grouping once, shared
  // bit-for-bit by both levels (exact telescoping of the level difference).
  const double x_t = prev.x_t;
  pair.y_plus = prev.y_plus;
  pair.y_minus = prev.y_minus;
  pair.chi_prev = {x_t, std::max({prev.sup, x_t, 0.0}),
                   std::clamp(prev.tau, 0.0, horizon)};
  pair.chi_curr = {x_t, std::max({curr.sup, x_t, 0.0}),
                   std::clamp(curr.tau, 0.0, horizon)};
  const ModelParams& p = model_->params();
  pair.log_weight = -p.lambda_plus * pair.y_plus + p.lambda_minus * pair.y_minus -
                    model_->derived().mu_lambda * horizon;
  return pair;
}

ExtremaSample sample_chi_n(const TemperedStableModel& model, int n, PhiloxStream& rng) {
  ChiSampler sampler(model);
  return sampler.sample(n, rng);
}

LevelPair couple_levels(const TemperedStableModel& model, int k, PhiloxStream& rng) {
  ChiSampler sampler(model);
  return sampler.sample_pair(k, rng);
}

}  // namespace tsb
