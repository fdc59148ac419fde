// Python bindings for the tempered stick-breaking Monte Carlo engine.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tsb/config.hpp"
#include "tsb/cost_models.hpp"
#include "tsb/estimators.hpp"
#include "tsb/model.hpp"
#include "tsb/payoffs.hpp"
#include "tsb/rng.hpp"
#include "tsb/sb_core.hpp"

namespace py = pybind11;

namespace {

tsb::PayoffSpec payoff_from_kwargs(const std::string& kind, double s0, double strike,
                                   double barrier, double tau_cut) {
  if (kind == "up_and_out_call") return tsb::PayoffSpec::up_and_out_call(s0, strike, barrier);
  if (kind == "ulcer_integrand") return tsb::PayoffSpec::ulcer(s0);
  if (kind == "modified_ulcer_integrand") return tsb::PayoffSpec::modified_ulcer(tau_cut, s0);
  if (kind == "lipschitz_sup") return tsb::PayoffSpec::supremum();
  throw std::invalid_argument("unknown payoff kind '" + kind + "'");
}

py::dict report_to_dict(const tsb::EstimateReport& report) {
  py::dict d;
  d["estimator"] = report.kind == tsb::EstimatorKind::mlmc ? "mlmc" : "mc";
  d["estimate"] = report.estimate;
  d["ci_low"] = report.ci_low;
  d["ci_high"] = report.ci_high;
  d["confidence_level"] = report.confidence_level;
  if (report.epsilon > 0.0) d["epsilon"] = report.epsilon;
  d["levels"] = report.levels;
  d["total_cost_units"] = report.total_cost_units;
  d["seed"] = report.seed;
  py::list level_stats;
  for (const auto& row : report.level_stats) {
    py::dict r;
    r["level"] = row.level;
    r["samples"] = row.samples;
    r["mean"] = row.mean;
    r["variance"] = row.variance;
    r["cost_units"] = row.cost_units;
    level_stats.append(r);
  }
  d["level_stats"] = level_stats;
  if (report.control_variates) {
    py::dict cv;
    cv["weights"] = std::vector<double>(report.control_variates->weights.begin(),
                                        report.control_variates->weights.end());
    cv["variance_without"] = report.control_variates->variance_without;
    cv["variance_with"] = report.control_variates->variance_with;
    cv["in_sample"] = report.control_variates->in_sample;
    d["control_variates"] = cv;
  }
  d["warnings"] = report.warnings;
  return d;
}

py::dict verdict_to_dict(const tsb::ComparisonVerdict& verdict) {
  py::dict d;
  d["preferred"] = verdict.preferred;
  d["regime"] = verdict.regime;
  d["criterion_values"] = verdict.criterion_values;
  return d;
}

tsb::EstimatorOptions options_from_kwargs(double epsilon, int levels, long long samples,
                                          const std::string& policy, double margin,
                                          double confidence_level, bool control_variates,
                                          bool paper_weights, std::uint64_t seed,
                                          int threads) {
  tsb::EstimatorOptions options;
  if (epsilon > 0.0 && (levels > 0 || samples > 0)) {
    throw std::invalid_argument("provide either epsilon or (levels, samples), not both");
  }
  if (epsilon > 0.0) {
    options.epsilon = epsilon;
  } else if (levels > 0 && samples > 0) {
    options.fixed_mode = true;
    options.fixed_levels = levels;
    options.fixed_samples = samples;
  } else {
    throw std::invalid_argument("provide either epsilon or (levels, samples)");
  }
  if (policy == "clt_rate") {
    options.policy = tsb::BiasPolicy::clt_rate;
  } else if (policy == "bias_extrapolation") {
    options.policy = tsb::BiasPolicy::bias_extrapolation;
  } else {
    throw std::invalid_argument("unknown bias policy '" + policy + "'");
  }
  options.margin = margin;
  options.confidence_level = confidence_level;
  options.control_variates = control_variates;
  options.paper_weights = paper_weights;
  options.seed = seed;
  options.threads = threads;
  return options;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Monte Carlo engine for the joint law of (terminal value, supremum, time of the "
      "supremum) of a tempered stable process, using stick-breaking under the un-tempered "
      "measure with an exponential change-of-measure weight.";

  py::class_<tsb::ModelParams>(m, "ModelParams")
      .def(py::init<>())
      .def_readwrite("sigma2", &tsb::ModelParams::sigma2)
      .def_readwrite("c_plus", &tsb::ModelParams::c_plus)
      .def_readwrite("c_minus", &tsb::ModelParams::c_minus)
      .def_readwrite("alpha_plus", &tsb::ModelParams::alpha_plus)
      .def_readwrite("alpha_minus", &tsb::ModelParams::alpha_minus)
      .def_readwrite("lambda_plus", &tsb::ModelParams::lambda_plus)
      .def_readwrite("lambda_minus", &tsb::ModelParams::lambda_minus)
      .def_readwrite("b_lambda", &tsb::ModelParams::b_lambda)
      .def_readwrite("horizon", &tsb::ModelParams::horizon);

  py::class_<tsb::TemperedStableModel>(m, "Model")
      .def(py::init<const tsb::ModelParams&, double>(), py::arg("params"),
           py::arg("delta") = 0.0)
      .def_static(
          "from_preset",
          [](const std::string& name, double horizon, double delta) {
            tsb::ModelParams params = tsb::preset_params(name);
            if (horizon > 0.0) params.horizon = horizon;
            return tsb::TemperedStableModel(params, delta);
          },
          py::arg("name"), py::arg("horizon") = 0.0, py::arg("delta") = 0.0)
      .def_property_readonly("params", &tsb::TemperedStableModel::params)
      .def_property_readonly("derived",
                             [](const tsb::TemperedStableModel& model) {
                               const auto& d = model.derived();
                               py::dict out;
                               out["b"] = d.b;
                               out["mu_lambda"] = d.mu_lambda;
                               out["mu_2lambda"] = d.mu_2lambda;
                               out["var_exponent"] = d.var_exponent;
                               out["mu_lambda_plus"] = d.mu_lambda_plus;
                               out["mu_lambda_minus"] = d.mu_lambda_minus;
                               out["gamma_plus"] = d.gamma_plus;
                               out["gamma_minus"] = d.gamma_minus;
                               out["beta"] = d.beta;
                               out["beta_star"] = d.beta_star;
                               out["alpha"] = d.alpha_idx;
                               out["alpha_star"] = d.alpha_star;
                               out["delta"] = d.delta_choice;
                               return out;
                             })
      .def("eta_p", &tsb::TemperedStableModel::eta_p, py::arg("p"));

  m.def("preset_params", &tsb::preset_params, py::arg("name"),
        "Calibrated parameter presets: usdjpy_v1, usdjpy_v2, mcd, bix, sox.");

  m.def(
      "sample",
      [](const tsb::TemperedStableModel& model, int levels, long long count,
         std::uint64_t seed) {
        if (levels < 1) throw std::invalid_argument("levels must be at least 1");
        if (count < 1) throw std::invalid_argument("count must be at least 1");
        tsb::ChiSampler sampler(model);
        const tsb::PhiloxStream master(seed);
        const auto level_key = static_cast<std::uint64_t>(levels) << 40;
        py::list rows;
        for (long long i = 0; i < count; ++i) {
          tsb::PhiloxStream rng = master.substream(level_key + static_cast<std::uint64_t>(i));
          const tsb::ExtremaSample s = sampler.sample(levels, rng);
          py::dict row;
          row["x_t"] = s.x_t;
          row["sup"] = s.sup;
          row["tau"] = s.tau;
          row["y_plus"] = s.y_plus;
          row["y_minus"] = s.y_minus;
          row["log_weight"] = s.log_weight;
          row["level"] = s.level;
          rows.append(row);
        }
        return rows;
      },
      py::arg("model"), py::arg("levels"), py::arg("count"), py::arg("seed") = 1,
      "Draw joint samples of (X_T, sup, tau, Y+, Y-, log weight) at one level.");

  const auto estimate_impl = [](const tsb::TemperedStableModel& model,
                                const std::string& estimator, const std::string& payoff,
                                double s0, double strike, double barrier, double tau_cut,
                                double epsilon, int levels, long long samples,
                                const std::string& policy, double margin,
                                double confidence_level, bool control_variates,
                                bool paper_weights, std::uint64_t seed, int threads) {
    const tsb::PayoffSpec spec = payoff_from_kwargs(payoff, s0, strike, barrier, tau_cut);
    const tsb::EstimatorOptions options =
        options_from_kwargs(epsilon, levels, samples, policy, margin, confidence_level,
                            control_variates, paper_weights, seed, threads);
    if (estimator == "mc") return report_to_dict(tsb::mc_estimate(model, spec, options));
    if (estimator == "mlmc") return report_to_dict(tsb::mlmc_estimate(model, spec, options));
    throw std::invalid_argument("unknown estimator '" + estimator + "'");
  };
  m.def("estimate", estimate_impl, py::arg("model"), py::arg("estimator") = "mc",
        py::arg("payoff") = "up_and_out_call", py::arg("s0") = 100.0, py::arg("strike") = 95.0,
        py::arg("barrier") = 102.0, py::arg("tau_cut") = 0.0, py::arg("epsilon") = 0.0,
        py::arg("levels") = 0, py::arg("samples") = 0, py::arg("policy") = "clt_rate",
        py::arg("margin") = 0.1, py::arg("confidence_level") = 0.95,
        py::arg("control_variates") = false, py::arg("paper_weights") = false,
        py::arg("seed") = 1, py::arg("threads") = 1,
        "Run the MC or MLMC estimator; returns the report as a dict.");

  m.def(
      "parse_config",
      [](const std::string& text) { return tsb::to_json_string(tsb::parse_config(text)); },
      py::arg("text"),
      "Parse an INI-style or JSON run configuration; returns the canonical JSON form.");

  m.def("ulcer_index", &tsb::ulcer_index, py::arg("expectation"),
        "Ulcer index 100 sqrt(expectation).");
  m.def("phi", &tsb::phi, py::arg("rho"), "The map phi(rho) = log2(1 + rho/(1 + rho)).");
  m.def("stick_exp_sum", &tsb::stick_exp_sum, py::arg("c"), py::arg("n"));
  m.def("stick_integral", &tsb::stick_integral, py::arg("c"));
  m.def("mc_vs_mlmc_threshold_eta", &tsb::mc_vs_mlmc_threshold_eta, py::arg("eta1"),
        "Accuracy threshold below which MLMC beats MC, for bias rate eta1.");
  m.def(
      "sb_vs_tsb",
      [](const tsb::TemperedStableModel& model) { return verdict_to_dict(tsb::sb_vs_tsb(model)); },
      py::arg("model"));
  m.def(
      "sbg_vs_tsb",
      [](const tsb::TemperedStableModel& model, double horizon, double accuracy) {
        return verdict_to_dict(tsb::sbg_vs_tsb(model, horizon, accuracy));
      },
      py::arg("model"), py::arg("horizon"), py::arg("accuracy"));
}
