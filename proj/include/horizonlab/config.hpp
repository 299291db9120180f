#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "horizonlab/common.hpp"

namespace horizonlab {

struct LearnerSpec {
  std::string name;
  std::map<std::string, double> params;
};

// Declarative benchmark description. Parsing is strict: unknown keys are
// rejected so stale configs fail loudly instead of silently running with
// defaults.
struct ExperimentConfig {
  int schema_version = 1;
  std::string game = "ball";
  int dimension = 10;
  int rounds = 1000;
  int trials = 200;
  int parallelism = 1;
  std::uint64_t seed = 1;
  std::string adversary = "sphere";
  std::vector<LearnerSpec> learners;
};

inline LearnerSpec parse_learner_spec(const nlohmann::json& j) {
  if (!j.is_object()) throw config_error("learner entries must be objects");
  LearnerSpec spec;
  for (const auto& [key, value] : j.items()) {
    if (key == "name") {
      if (!value.is_string()) throw config_error("learner name must be a string");
      spec.name = value.get<std::string>();
    } else {
      if (!value.is_number()) throw config_error("learner parameter '" + key + "' must be numeric");
      spec.params[key] = value.get<double>();
    }
  }
  if (spec.name.empty()) throw config_error("learner entry is missing a name");
  return spec;
}

inline ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw config_error("config root must be an object");
  ExperimentConfig cfg;
  bool saw_version = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "schema_version") {
      cfg.schema_version = value.get<int>();
      saw_version = true;
    } else if (key == "game") {
      cfg.game = value.get<std::string>();
    } else if (key == "dimension") {
      cfg.dimension = value.get<int>();
    } else if (key == "rounds") {
      cfg.rounds = value.get<int>();
    } else if (key == "trials") {
      cfg.trials = value.get<int>();
    } else if (key == "parallelism") {
      cfg.parallelism = value.get<int>();
    } else if (key == "seed") {
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "adversary") {
      cfg.adversary = value.get<std::string>();
    } else if (key == "learners") {
      if (!value.is_array()) throw config_error("'learners' must be an array");
      for (const auto& item : value) cfg.learners.push_back(parse_learner_spec(item));
    } else {
      throw config_error("unknown config key: " + key);
    }
  }
  if (!saw_version) throw config_error("config is missing 'schema_version'");
  if (cfg.schema_version != 1) throw config_error("unsupported schema_version");
  if (cfg.game != "ball") throw config_error("only ball-game benchmarks are supported");
  if (cfg.dimension < 2) throw config_error("dimension must be >= 2");
  if (cfg.rounds < 1) throw config_error("rounds must be >= 1");
  if (cfg.trials < 1) throw config_error("trials must be >= 1");
  if (cfg.parallelism < 1) throw config_error("parallelism must be >= 1");
  if (cfg.adversary != "sphere" && cfg.adversary != "ball")
    throw config_error("adversary must be 'sphere' or 'ball'");
  if (cfg.learners.empty()) throw config_error("at least one learner is required");
  return cfg;
}

inline ExperimentConfig parse_experiment_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("config JSON parse error: ") + e.what());
  }
  return experiment_config_from_json(j);
}

}  // namespace horizonlab
