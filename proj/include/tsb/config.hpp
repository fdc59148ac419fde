#pragma once

// Declarative run configuration: key-value text with [sections] or JSON
// (auto-detected), mapping onto the model, payoff, and estimator options.

#include <string>

#include "tsb/estimators.hpp"
#include "tsb/model.hpp"
#include "tsb/payoffs.hpp"

namespace tsb {

struct RunConfig {
  // [model]
  std::string preset;  // overrides the explicit fields when nonempty
  ModelParams model;
  double delta = 0.0;  // index enlargement; 0 requests the default

  // [payoff]
  std::string payoff_kind = "up_and_out_call";
  double s0 = 100.0;
  double strike = 95.0;
  double barrier = 102.0;
  double tau_cut = 0.0;

  // [estimator]
  std::string estimator = "mc";  // "mc" or "mlmc"
  bool has_epsilon = false;
  double epsilon = 0.0;
  bool has_fixed = false;
  int levels = 0;
  long long samples = 0;
  std::string policy = "clt_rate";  // or "bias_extrapolation"
  double margin = 0.1;
  double confidence_level = 0.95;
  bool control_variates = false;
  bool paper_weights = false;

  // [run]
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out;
};

// Parses INI-style text ([section] + key = value, '#'/';' comments) or JSON
// (first significant character '{').  Throws std::invalid_argument on
// malformed input or unknown keys.
RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

// Canonical JSON serialization; parse(to_json_string(c)) is semantically
// idempotent.
std::string to_json_string(const RunConfig& config);

// Instantiation (revalidates all model invariants).
TemperedStableModel build_model(const RunConfig& config);
PayoffSpec build_payoff(const RunConfig& config);
EstimatorOptions build_estimator_options(const RunConfig& config);

// Enforces cross-field invariants (exactly one of epsilon / (levels, samples)).
void validate_config(const RunConfig& config);

// Report serialization for the CLI and file outputs.
std::string report_to_json(const EstimateReport& report);

}  // namespace tsb
