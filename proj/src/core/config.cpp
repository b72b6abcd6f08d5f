#include "asymsim/core/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "asymsim/core/defaults.hpp"
#include "asymsim/core/errors.hpp"

namespace asymsim {

const std::vector<std::string>& known_policy_names() {
  static const std::vector<std::string> names = {"silent", "relay_top", "epidemic",
                                                 "forced_recruit", "llm"};
  return names;
}

const std::vector<std::string>& known_similarity_providers() {
  static const std::vector<std::string> names = {"tf_cosine", "embedding_api"};
  return names;
}

namespace {

bool contains(const std::vector<std::string>& names, const std::string& s) {
  return std::find(names.begin(), names.end(), s) != names.end();
}

}  // namespace

std::vector<std::string> validate_config(const ScenarioConfig& config) {
  std::vector<std::string> violations;
  if (config.content.text.empty()) {
    violations.push_back("content text is empty");
  }
  if (config.rounds < 1) {
    violations.push_back("rounds must be >= 1");
  }
  if (config.similarity_threshold < 0.0 || config.similarity_threshold > 1.0) {
    violations.push_back("threshold out of [0,1]");
  }
  if (!contains(known_policy_names(), config.policy.name)) {
    violations.push_back("unknown policy name: " + config.policy.name);
  }
  if (!contains(known_similarity_providers(), config.similarity.name)) {
    violations.push_back("unknown similarity provider: " + config.similarity.name);
  }
  if (config.max_recruits_per_agent_per_round != 1) {
    violations.push_back("max_recruits_per_agent_per_round is fixed at 1");
  }
  if (config.max_sends_per_agent_per_round != 1) {
    violations.push_back("max_sends_per_agent_per_round is fixed at 1");
  }
  return violations;
}

std::string scenario_name(const ScenarioConfig& config) {
  std::ostringstream out;
  out << to_string(config.content.kind) << '-' << to_string(config.mechanism) << '-'
      << to_string(config.initial_polarity) << '-' << to_string(config.topology);
  return out.str();
}

nlohmann::ordered_json config_to_json(const ScenarioConfig& config) {
  nlohmann::ordered_json j;
  j["content"] = {{"kind", to_string(config.content.kind)},
                  {"text", config.content.text}};
  j["mechanism"] = to_string(config.mechanism);
  j["topology"] = to_string(config.topology);
  j["initial_polarity"] = to_string(config.initial_polarity);
  j["rounds"] = config.rounds;
  j["rng_seed"] = config.rng_seed;
  j["similarity_threshold"] = config.similarity_threshold;
  j["policy"] = {{"name", config.policy.name}, {"parameters", config.policy.parameters}};
  j["similarity"] = {{"name", config.similarity.name},
                     {"parameters", config.similarity.parameters}};
  j["max_recruits_per_agent_per_round"] = config.max_recruits_per_agent_per_round;
  j["max_sends_per_agent_per_round"] = config.max_sends_per_agent_per_round;
  return j;
}

namespace {

template <typename T>
T parse_enum(const nlohmann::json& j, const char* field,
             std::optional<T> (*from_string)(std::string_view)) {
  if (!j.contains(field)) throw ConfigError(std::string("config missing field: ") + field);
  if (!j.at(field).is_string())
    throw ConfigError(std::string("config field must be a string: ") + field);
  const auto s = j.at(field).get<std::string>();
  auto v = from_string(s);
  if (!v) throw ConfigError(std::string("config field ") + field + " has unknown value: " + s);
  return *v;
}

}  // namespace

ScenarioConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ScenarioConfig config;

  if (!j.contains("content") || !j.at("content").is_object())
    throw ConfigError("config missing object field: content");
  const auto& content = j.at("content");
  config.content.kind = parse_enum<ContentKind>(content, "kind", &content_kind_from_string);
  if (content.contains("text")) {
    if (!content.at("text").is_string())
      throw ConfigError("config field content.text must be a string");
    config.content.text = content.at("text").get<std::string>();
  } else {
    config.content.text = default_content(config.content.kind).text;
  }

  config.mechanism =
      parse_enum<DistributionMechanism>(j, "mechanism", &mechanism_from_string);
  config.topology = parse_enum<Topology>(j, "topology", &topology_from_string);
  config.initial_polarity =
      parse_enum<Polarity>(j, "initial_polarity", &polarity_from_string);

  auto read_int = [&](const char* field, auto& out) {
    if (!j.contains(field)) return;
    if (!j.at(field).is_number_integer())
      throw ConfigError(std::string("config field must be an integer: ") + field);
    out = j.at(field).get<std::decay_t<decltype(out)>>();
  };
  read_int("rounds", config.rounds);
  read_int("rng_seed", config.rng_seed);
  read_int("max_recruits_per_agent_per_round", config.max_recruits_per_agent_per_round);
  read_int("max_sends_per_agent_per_round", config.max_sends_per_agent_per_round);

  if (j.contains("similarity_threshold")) {
    if (!j.at("similarity_threshold").is_number())
      throw ConfigError("config field similarity_threshold must be a number");
    config.similarity_threshold = j.at("similarity_threshold").get<double>();
  }

  auto read_spec = [&](const char* field, auto& spec) {
    if (!j.contains(field)) return;
    const auto& s = j.at(field);
    if (!s.is_object() || !s.contains("name") || !s.at("name").is_string())
      throw ConfigError(std::string("config field ") + field +
                        " must be an object with a string name");
    spec.name = s.at("name").get<std::string>();
    if (s.contains("parameters")) {
      if (!s.at("parameters").is_object())
        throw ConfigError(std::string("config field ") + field +
                          ".parameters must be an object");
      spec.parameters = s.at("parameters");
    }
  };
  read_spec("policy", config.policy);
  read_spec("similarity", config.similarity);

  return config;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

void save_config(const ScenarioConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write config file: " + path.string());
  out << config_to_json(config).dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace asymsim
