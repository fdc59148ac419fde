#include "tsb/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tsb {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  std::size_t first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  std::size_t last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_bool(const std::string& raw, const std::string& key) {
  if (raw == "true" || raw == "1" || raw == "yes" || raw == "on") return true;
  if (raw == "false" || raw == "0" || raw == "no" || raw == "off") return false;
  throw std::invalid_argument("config: boolean expected for '" + key + "', got '" + raw + "'");
}

double parse_double(const std::string& raw, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(raw, &pos);
    if (pos != raw.size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: number expected for '" + key + "', got '" + raw + "'");
  }
}

long long parse_int(const std::string& raw, const std::string& key) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(raw, &pos);
    if (pos != raw.size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: integer expected for '" + key + "', got '" + raw + "'");
  }
}

// Applies one section.key = value assignment; shared by both input formats.
void apply(RunConfig& c, const std::string& section, const std::string& key,
           const std::string& value) {
  const std::string full = section + "." + key;
  if (section == "model") {
    if (key == "preset") { c.preset = value; return; }
    if (key == "sigma2") { c.model.sigma2 = parse_double(value, full); return; }
    if (key == "sigma") { const double s = parse_double(value, full); c.model.sigma2 = s * s; return; }
    if (key == "c_plus") { c.model.c_plus = parse_double(value, full); return; }
    if (key == "c_minus") { c.model.c_minus = parse_double(value, full); return; }
    if (key == "alpha_plus") { c.model.alpha_plus = parse_double(value, full); return; }
    if (key == "alpha_minus") { c.model.alpha_minus = parse_double(value, full); return; }
    if (key == "alpha") {
      c.model.alpha_plus = c.model.alpha_minus = parse_double(value, full);
      return;
    }
    if (key == "lambda_plus") { c.model.lambda_plus = parse_double(value, full); return; }
    if (key == "lambda_minus") { c.model.lambda_minus = parse_double(value, full); return; }
    if (key == "b_lambda") { c.model.b_lambda = parse_double(value, full); return; }
    if (key == "horizon") { c.model.horizon = parse_double(value, full); return; }
    if (key == "delta") { c.delta = parse_double(value, full); return; }
  } else if (section == "payoff") {
    if (key == "kind") { c.payoff_kind = value; return; }
    if (key == "s0") { c.s0 = parse_double(value, full); return; }
    if (key == "strike") { c.strike = parse_double(value, full); return; }
    if (key == "barrier") { c.barrier = parse_double(value, full); return; }
    if (key == "tau_cut") { c.tau_cut = parse_double(value, full); return; }
  } else if (section == "estimator") {
    if (key == "type") { c.estimator = value; return; }
    if (key == "epsilon") {
      c.epsilon = parse_double(value, full);
      c.has_epsilon = true;
      return;
    }
    if (key == "levels") {
      c.levels = static_cast<int>(parse_int(value, full));
      c.has_fixed = true;
      return;
    }
    if (key == "samples") {
      c.samples = parse_int(value, full);
      c.has_fixed = true;
      return;
    }
    if (key == "policy") { c.policy = value; return; }
    if (key == "margin") { c.margin = parse_double(value, full); return; }
    if (key == "confidence_level") { c.confidence_level = parse_double(value, full); return; }
    if (key == "control_variates") { c.control_variates = parse_bool(value, full); return; }
    if (key == "paper_weights") { c.paper_weights = parse_bool(value, full); return; }
  } else if (section == "run") {
    if (key == "seed") { c.seed = static_cast<std::uint64_t>(parse_int(value, full)); return; }
    if (key == "threads") { c.threads = static_cast<int>(parse_int(value, full)); return; }
    if (key == "out") { c.out = value; return; }
  }
  throw std::invalid_argument("config: unknown key '" + full + "'");
}

RunConfig parse_ini(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw std::invalid_argument("config: malformed section header at line " +
                                    std::to_string(line_no));
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: expected 'key = value' at line " +
                                  std::to_string(line_no));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) {
      throw std::invalid_argument("config: key '" + key + "' appears before any [section]");
    }
    apply(c, section, key, value);
  }
  return c;
}

std::string value_to_string(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    std::ostringstream os;
    os.precision(17);
    os << v.get<double>();
    return os.str();
  }
  throw std::invalid_argument("config: scalar value expected");
}

RunConfig parse_json_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
  }
  if (!root.is_object()) throw std::invalid_argument("config: JSON root must be an object");
  RunConfig c;
  for (const auto& [section, body] : root.items()) {
    if (!body.is_object()) {
      throw std::invalid_argument("config: section '" + section + "' must be an object");
    }
    for (const auto& [key, value] : body.items()) {
      apply(c, section, key, value_to_string(value));
    }
  }
  return c;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    return ch == '{' ? parse_json_text(text) : parse_ini(text);
  }
  return RunConfig{};  // empty input: all defaults
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string to_json_string(const RunConfig& c) {
  json root;
  json model;
  if (!c.preset.empty()) model["preset"] = c.preset;
  model["sigma2"] = c.model.sigma2;
  model["c_plus"] = c.model.c_plus;
  model["c_minus"] = c.model.c_minus;
  model["alpha_plus"] = c.model.alpha_plus;
  model["alpha_minus"] = c.model.alpha_minus;
  model["lambda_plus"] = c.model.lambda_plus;
  model["lambda_minus"] = c.model.lambda_minus;
  model["b_lambda"] = c.model.b_lambda;
  model["horizon"] = c.model.horizon;
  if (c.delta > 0.0) model["delta"] = c.delta;
  root["model"] = model;

  json payoff;
  payoff["kind"] = c.payoff_kind;
  payoff["s0"] = c.s0;
  payoff["strike"] = c.strike;
  payoff["barrier"] = c.barrier;
  payoff["tau_cut"] = c.tau_cut;
  root["payoff"] = payoff;

  json estimator;
  estimator["type"] = c.estimator;
  if (c.has_epsilon) estimator["epsilon"] = c.epsilon;
  if (c.has_fixed) {
    estimator["levels"] = c.levels;
    estimator["samples"] = c.samples;
  }
  estimator["policy"] = c.policy;
  estimator["margin"] = c.margin;
  estimator["confidence_level"] = c.confidence_level;
  estimator["control_variates"] = c.control_variates;
  estimator["paper_weights"] = c.paper_weights;
  root["estimator"] = estimator;

  json run;
  run["seed"] = c.seed;
  run["threads"] = c.threads;
  if (!c.out.empty()) run["out"] = c.out;
  root["run"] = run;
  return root.dump(2);
}

void validate_config(const RunConfig& c) {
  if (c.has_epsilon == c.has_fixed) {
    throw std::invalid_argument(
        "config: provide exactly one of estimator.epsilon or explicit "
        "(estimator.levels, estimator.samples)");
  }
  if (c.has_fixed && (c.levels < 1 || c.samples < 1)) {
    throw std::invalid_argument("config: explicit mode needs levels >= 1 and samples >= 1");
  }
  if (c.has_epsilon && !(c.epsilon > 0.0)) {
    throw std::invalid_argument("config: epsilon must be positive");
  }
  if (c.estimator != "mc" && c.estimator != "mlmc") {
    throw std::invalid_argument("config: estimator.type must be 'mc' or 'mlmc'");
  }
  if (c.policy != "clt_rate" && c.policy != "bias_extrapolation") {
    throw std::invalid_argument(
        "config: estimator.policy must be 'clt_rate' or 'bias_extrapolation'");
  }
  if (!(c.confidence_level > 0.0) || !(c.confidence_level < 1.0)) {
    throw std::invalid_argument("config: confidence_level must lie in (0,1)");
  }
  if (c.threads < 1) throw std::invalid_argument("config: threads must be >= 1");
  build_payoff(c);  // validates the payoff kind and parameters
}

TemperedStableModel build_model(const RunConfig& c) {
  ModelParams params = c.model;
  if (!c.preset.empty()) {
    const double horizon = c.model.horizon;
    params = preset_params(c.preset);
    params.horizon = horizon;
  }
  return TemperedStableModel(params, c.delta);
}

PayoffSpec build_payoff(const RunConfig& c) {
  if (c.payoff_kind == "up_and_out_call") {
    if (!(c.s0 > 0.0) || !(c.strike > 0.0) || !(c.barrier > 0.0)) {
      throw std::invalid_argument("config: up_and_out_call needs positive s0, strike, barrier");
    }
    return PayoffSpec::up_and_out_call(c.s0, c.strike, c.barrier);
  }
  if (c.payoff_kind == "ulcer_integrand") return PayoffSpec::ulcer(c.s0);
  if (c.payoff_kind == "modified_ulcer_integrand") {
    if (!(c.tau_cut > 0.0) || !(c.tau_cut < c.model.horizon)) {
      throw std::invalid_argument(
          "config: modified_ulcer_integrand needs tau_cut in (0, horizon)");
    }
    return PayoffSpec::modified_ulcer(c.tau_cut, c.s0);
  }
  if (c.payoff_kind == "lipschitz_sup") return PayoffSpec::supremum();
  throw std::invalid_argument("config: unknown payoff kind '" + c.payoff_kind + "'");
}

EstimatorOptions build_estimator_options(const RunConfig& c) {
  EstimatorOptions o;
  if (c.has_epsilon) {
    o.epsilon = c.epsilon;
  } else {
    o.fixed_mode = true;
    o.fixed_levels = c.levels;
    o.fixed_samples = c.samples;
    o.epsilon = 0.0;
  }
  o.policy = c.policy == "bias_extrapolation" ? BiasPolicy::bias_extrapolation
                                              : BiasPolicy::clt_rate;
  o.margin = c.margin;
  o.confidence_level = c.confidence_level;
  o.control_variates = c.control_variates;
  o.paper_weights = c.paper_weights;
  o.seed = c.seed;
  o.threads = c.threads;
  return o;
}

std::string report_to_json(const EstimateReport& r) {
  json root;
  root["estimator"] = r.kind == EstimatorKind::mc ? "mc" : "mlmc";
  root["estimate"] = r.estimate;
  root["ci_low"] = r.ci_low;
  root["ci_high"] = r.ci_high;
  root["confidence_level"] = r.confidence_level;
  if (r.epsilon > 0.0) root["epsilon"] = r.epsilon;
  root["levels"] = r.levels;
  root["total_cost_units"] = r.total_cost_units;
  root["seed"] = r.seed;
  json levels = json::array();
  for (const auto& s : r.level_stats) {
    json row;
    row["level"] = s.level;
    row["samples"] = s.samples;
    row["mean"] = s.mean;
    row["variance"] = s.variance;
    row["cost_units"] = s.cost_units;
    if (s.cv_weights != std::array<double, 3>{}) {
      row["cv_weights"] = {s.cv_weights[0], s.cv_weights[1], s.cv_weights[2]};
    }
    levels.push_back(row);
  }
  root["level_stats"] = levels;
  if (r.control_variates) {
    const auto& cv = *r.control_variates;
    json info;
    info["weights"] = {cv.weights[0], cv.weights[1], cv.weights[2]};
    info["variance_without"] = cv.variance_without;
    info["variance_with"] = cv.variance_with;
    info["in_sample"] = cv.in_sample;
    root["control_variates"] = info;
  }
  if (!r.warnings.empty()) root["warnings"] = r.warnings;
  return root.dump(2);
}

}  // namespace tsb
