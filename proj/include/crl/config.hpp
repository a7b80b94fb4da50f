#pragma once

// Experiment configuration: a single JSON file with explicit units in the
// field names. Noise variances accept exactly one of <name>_db or <name>_w;
// powers are plain watts. Parsing collects every problem with its field
// path so the CLI can fail with a usable diagnostic.

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "crl/errors.hpp"
#include "crl/model.hpp"
#include "crl/montecarlo.hpp"

namespace crl {

struct SweepSpec {
  std::string variable;
  std::vector<double> values;
};

struct ExperimentConfig {
  SystemParams params;
  SimConfig sim;
  std::optional<SweepSpec> sweep;
  std::string output_path;
  std::vector<double> lambda_grid;  // optional thresholds for `simulate`
};

namespace detail {

inline bool read_noise_field(const nlohmann::json& j, const std::string& base, double& out,
                             std::vector<std::string>& issues) {
  const std::string db_key = base + "_db";
  const std::string w_key = base + "_w";
  const bool has_db = j.contains(db_key);
  const bool has_w = j.contains(w_key);
  if (has_db == has_w) {
    issues.push_back("params." + base + ": provide exactly one of " + db_key + " or " + w_key);
    return false;
  }
  const auto& v = has_db ? j.at(db_key) : j.at(w_key);
  if (!v.is_number()) {
    issues.push_back("params." + (has_db ? db_key : w_key) + ": must be a number");
    return false;
  }
  out = has_db ? db_to_linear(v.get<double>()) : v.get<double>();
  return true;
}

template <typename T>
inline bool read_field(const nlohmann::json& j, const std::string& scope, const char* key,
                       T& out, std::vector<std::string>& issues, bool required = true) {
  if (!j.contains(key)) {
    if (required) issues.push_back(scope + "." + key + ": missing");
    return false;
  }
  try {
    out = j.at(key).get<T>();
    return true;
  } catch (const nlohmann::json::exception&) {
    issues.push_back(scope + "." + key + ": wrong type");
    return false;
  }
}

}  // namespace detail

// Known sweep variables, mapped onto SystemParams/SimConfig fields.
inline bool apply_sweep_value(ExperimentConfig& cfg, const std::string& var, double value) {
  if (var == "p_t_w") {
    cfg.params.p_t = value;
  } else if (var == "p_j_w") {
    cfg.params.p_j = value;
  } else if (var == "p_max_w") {
    cfg.params.p_max = value;
  } else if (var == "alpha") {
    cfg.params.alpha = value;
  } else if (var == "theta") {
    cfg.params.theta = value;
  } else if (var == "epsilon_c") {
    cfg.params.epsilon_c = value;
  } else if (var == "n") {
    cfg.params.n = static_cast<int>(value);
  } else if (var == "trials") {
    cfg.sim.trials = static_cast<long long>(value);
  } else if (var == "jammer_count") {
    cfg.sim.jammer_count = static_cast<int>(value);
  } else {
    return false;
  }
  return true;
}

inline ExperimentConfig parse_config(const nlohmann::json& j, std::vector<std::string>& issues) {
  ExperimentConfig cfg;
  if (!j.contains("params") || !j.at("params").is_object()) {
    issues.emplace_back("params: missing object");
    return cfg;
  }
  const auto& jp = j.at("params");
  detail::read_field(jp, "params", "n", cfg.params.n, issues);
  detail::read_field(jp, "params", "p_t_w", cfg.params.p_t, issues);
  detail::read_field(jp, "params", "p_j_w", cfg.params.p_j, issues);
  detail::read_field(jp, "params", "p_max_w", cfg.params.p_max, issues);
  detail::read_field(jp, "params", "alpha", cfg.params.alpha, issues);
  detail::read_field(jp, "params", "theta", cfg.params.theta, issues);
  detail::read_field(jp, "params", "epsilon_c", cfg.params.epsilon_c, issues);
  detail::read_noise_field(jp, "sigma_w2", cfg.params.sigma_w2, issues);
  detail::read_noise_field(jp, "sigma_c2", cfg.params.sigma_c2, issues);
  detail::read_noise_field(jp, "sigma_b2", cfg.params.sigma_b2, issues);

  if (j.contains("sim")) {
    const auto& js = j.at("sim");
    if (!js.is_object()) {
      issues.emplace_back("sim: must be an object");
    } else {
      detail::read_field(js, "sim", "trials", cfg.sim.trials, issues, false);
      detail::read_field(js, "sim", "seed", cfg.sim.seed, issues, false);
      detail::read_field(js, "sim", "workers", cfg.sim.workers, issues, false);
      detail::read_field(js, "sim", "jammer_count", cfg.sim.jammer_count, issues, false);
      detail::read_field(js, "sim", "conditional_min_rate", cfg.sim.conditional_min_rate,
                         issues, false);
      std::string s;
      if (detail::read_field(js, "sim", "mode", s, issues, false)) {
        if (s == "formula_consistent") {
          cfg.sim.mode = SimMode::formula_consistent;
        } else if (s == "scheme") {
          cfg.sim.mode = SimMode::scheme;
        } else {
          issues.emplace_back("sim.mode: must be formula_consistent or scheme");
        }
      }
      if (detail::read_field(js, "sim", "scheme", s, issues, false)) {
        if (s == "rrs") {
          cfg.sim.scheme = Scheme::rrs;
        } else if (s == "mmrs") {
          cfg.sim.scheme = Scheme::mmrs;
        } else {
          issues.emplace_back("sim.scheme: must be rrs or mmrs");
        }
      }
      if (detail::read_field(js, "sim", "power_mode", s, issues, false)) {
        if (s == "fixed_pt") {
          cfg.sim.power_mode = PowerMode::fixed_pt;
        } else if (s == "channel_inversion") {
          cfg.sim.power_mode = PowerMode::channel_inversion;
        } else {
          issues.emplace_back("sim.power_mode: must be fixed_pt or channel_inversion");
        }
      }
      if (js.contains("lambda_grid")) {
        try {
          cfg.lambda_grid = js.at("lambda_grid").get<std::vector<double>>();
        } catch (const nlohmann::json::exception&) {
          issues.emplace_back("sim.lambda_grid: must be an array of numbers");
        }
      }
    }
  }

  if (j.contains("sweep")) {
    const auto& jw = j.at("sweep");
    SweepSpec sweep;
    if (!jw.is_object() || !detail::read_field(jw, "sweep", "variable", sweep.variable, issues) ||
        !jw.contains("values")) {
      issues.emplace_back("sweep: needs variable and values");
    } else {
      try {
        sweep.values = jw.at("values").get<std::vector<double>>();
      } catch (const nlohmann::json::exception&) {
        issues.emplace_back("sweep.values: must be an array of numbers");
      }
      if (sweep.values.empty()) issues.emplace_back("sweep.values: must be nonempty");
      for (std::size_t i = 1; i < sweep.values.size(); ++i) {
        if (!(sweep.values[i] > sweep.values[i - 1])) {
          issues.emplace_back("sweep.values: must be strictly increasing");
          break;
        }
      }
      ExperimentConfig scratch = cfg;
      if (!sweep.variable.empty() && !apply_sweep_value(scratch, sweep.variable, 1.0)) {
        issues.push_back("sweep.variable: unknown field '" + sweep.variable + "'");
      }
      if (issues.empty()) cfg.sweep = sweep;
    }
  }

  if (j.contains("output_path")) {
    detail::read_field(j, "config", "output_path", cfg.output_path, issues, false);
  }

  for (const auto& s : cfg.params.validate()) issues.push_back(s);
  for (const auto& s : cfg.sim.validate()) issues.push_back(s);
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path, std::vector<std::string>& issues) {
  std::ifstream f(path);
  if (!f) {
    issues.push_back("config: cannot open " + path);
    return {};
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    issues.push_back(std::string("config: JSON parse error: ") + e.what());
    return {};
  }
  return parse_config(j, issues);
}

}  // namespace crl
