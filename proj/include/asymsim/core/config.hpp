#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "asymsim/core/types.hpp"

#include "json.hpp"

namespace asymsim {

struct PolicySpec {
  std::string name = "silent";
  nlohmann::json parameters = nlohmann::json::object();

  bool operator==(const PolicySpec& o) const {
    return name == o.name && parameters == o.parameters;
  }
};

struct SimilaritySpec {
  std::string name = "tf_cosine";
  nlohmann::json parameters = nlohmann::json::object();

  bool operator==(const SimilaritySpec& o) const {
    return name == o.name && parameters == o.parameters;
  }
};

// One simulation setup: what is injected, how, into which group shape, and
// which policy/similarity plugins drive it.
struct ScenarioConfig {
  InfoContent content;
  DistributionMechanism mechanism = DistributionMechanism::BC;
  Topology topology = Topology::wheel;
  Polarity initial_polarity = Polarity::positive;
  int rounds = 10;
  std::uint64_t rng_seed = 0;
  double similarity_threshold = 0.8;
  PolicySpec policy;
  SimilaritySpec similarity;
  int max_recruits_per_agent_per_round = 1;
  int max_sends_per_agent_per_round = 1;

  bool operator==(const ScenarioConfig&) const = default;
};

// Canonical plugin names; factories in the policy/similarity modules must
// stay in sync with these lists (checked by tests).
const std::vector<std::string>& known_policy_names();
const std::vector<std::string>& known_similarity_providers();

// Returns every violation found (empty means the config is valid): empty
// content text, threshold out of [0,1], rounds < 1, unknown policy/provider
// names, caps not fixed at 1.
std::vector<std::string> validate_config(const ScenarioConfig& config);

// "SH-BC-positive-wheel" style name used for bundled files and batch output.
std::string scenario_name(const ScenarioConfig& config);

nlohmann::ordered_json config_to_json(const ScenarioConfig& config);

// Throws ConfigError on structural problems (wrong types, unknown enum
// strings). Field-level violations are left to validate_config.
ScenarioConfig config_from_json(const nlohmann::json& j);

ScenarioConfig load_config(const std::filesystem::path& path);
void save_config(const ScenarioConfig& config, const std::filesystem::path& path);

}  // namespace asymsim
