#include <filesystem>
#include <set>

#include "asymsim/core/config.hpp"
#include "asymsim/core/defaults.hpp"
#include "asymsim/core/errors.hpp"
#include "asymsim/core/topology.hpp"

#include "doctest.h"

using namespace asymsim;

TEST_SUITE("core") {

TEST_CASE("wheel edges all touch the hub") {
  const auto edges = topology_edges(Topology::wheel);
  CHECK(edges.size() == 4);
  for (auto [a, b] : edges) {
    CHECK((a == 2 || b == 2));
  }
}

TEST_CASE("circle edges form a 5-ring") {
  const auto edges = topology_edges(Topology::circle);
  CHECK(edges.size() == 5);
  std::map<AgentId, int> degree;
  std::set<std::pair<AgentId, AgentId>> edge_set(edges.begin(), edges.end());
  for (auto [a, b] : edges) {
    ++degree[a];
    ++degree[b];
  }
  for (AgentId a = 1; a <= 5; ++a) CHECK(degree[a] == 2);
  CHECK(!edge_set.contains({1, 3}));
}

TEST_CASE("initial relationships follow the edge rule") {
  const auto wheel = init_relationships(Topology::wheel, Polarity::positive);
  CHECK(wheel.at(2).entries ==
        std::map<AgentId, RelationshipKind>{{1, RelationshipKind::positive},
                                            {3, RelationshipKind::positive},
                                            {4, RelationshipKind::positive},
                                            {5, RelationshipKind::positive}});
  CHECK(wheel.at(1).entries ==
        std::map<AgentId, RelationshipKind>{{2, RelationshipKind::positive},
                                            {3, RelationshipKind::general},
                                            {4, RelationshipKind::general},
                                            {5, RelationshipKind::general}});

  const auto circle = init_relationships(Topology::circle, Polarity::negative);
  CHECK(circle.at(1).entries ==
        std::map<AgentId, RelationshipKind>{{2, RelationshipKind::negative},
                                            {3, RelationshipKind::general},
                                            {4, RelationshipKind::general},
                                            {5, RelationshipKind::negative}});
}

TEST_CASE("initial views are symmetric, self-free, and complete") {
  for (auto topology : {Topology::wheel, Topology::circle}) {
    for (auto polarity : {Polarity::positive, Polarity::negative}) {
      const auto views = init_relationships(topology, polarity);
      CHECK(views.size() == 5);
      for (const auto& [owner, view] : views) {
        CHECK(view.owner == owner);
        CHECK(view.entries.size() == 4);
        CHECK(!view.entries.contains(owner));
        for (const auto& [other, kind] : view.entries) {
          CHECK(views.at(other).entries.at(owner) == kind);
        }
      }
    }
  }
}

TEST_CASE("validate_config accepts the bundled default") {
  const ScenarioConfig config = default_config(
      ContentKind::SH, DistributionMechanism::BC, Topology::wheel, Polarity::positive);
  CHECK(validate_config(config).empty());
}

TEST_CASE("validate_config reports each violation") {
  ScenarioConfig config = default_config(
      ContentKind::SH, DistributionMechanism::BC, Topology::wheel, Polarity::positive);
  config.similarity_threshold = 1.5;
  config.rounds = 0;
  config.policy.name = "nonsense";
  config.content.text.clear();
  config.max_sends_per_agent_per_round = 2;
  const auto violations = validate_config(config);
  CHECK(violations.size() == 5);
  bool saw_threshold = false;
  bool saw_rounds = false;
  for (const auto& v : violations) {
    if (v.find("threshold") != std::string::npos) saw_threshold = true;
    if (v.find("rounds") != std::string::npos) saw_rounds = true;
  }
  CHECK(saw_threshold);
  CHECK(saw_rounds);
}

TEST_CASE("fixed initial profiles") {
  const auto& profiles = default_profiles();
  REQUIRE(profiles.size() == 5);
  CHECK(profiles[0].id == 1);
  CHECK(profiles[0].age == 25);
  CHECK(profiles[0].gender == "woman");
  CHECK(profiles[1].age == 36);
  CHECK(profiles[2].occupation ==
        "He is a bartender and bar owner of The Rose and Crown Pub who loves to make "
        "people feel welcome. He is always looking for ways to make his customers "
        "feel special.");
  CHECK(profiles[3].innate ==
        std::vector<std::string>{"curious", "determined", "independent"});
  CHECK(profiles[4].age == 32);
  CHECK(profiles[4].innate == std::vector<std::string>{"loud", "rude", "toxic"});
  for (const auto& profile : profiles) {
    CHECK(profile.age > 0);
    CHECK(!profile.gender.empty());
    CHECK(!profile.innate.empty());
    CHECK(!profile.occupation.empty());
  }
}

TEST_CASE("bundled content texts") {
  CHECK(default_content(ContentKind::OG).text.find("There’s a rumor") == 0);
  CHECK(default_content(ContentKind::PP).text.find("increase taxes") !=
        std::string::npos);
  CHECK(default_content(ContentKind::LC).text.find("digital artwork vanished") !=
        std::string::npos);
  CHECK(default_content(ContentKind::SH).text.find("$50,000") != std::string::npos);
  for (auto kind :
       {ContentKind::OG, ContentKind::PP, ContentKind::LC, ContentKind::SH}) {
    CHECK(default_content(kind).kind == kind);
    CHECK(!default_content(kind).text.empty());
  }
}

TEST_CASE("config json round-trip") {
  ScenarioConfig config = default_config(
      ContentKind::LC, DistributionMechanism::BCR, Topology::circle, Polarity::negative);
  config.rng_seed = 1234;
  config.rounds = 7;
  config.policy.name = "epidemic";
  config.policy.parameters = {{"p", 0.25}};
  const ScenarioConfig parsed = config_from_json(config_to_json(config));
  CHECK(parsed == config);
  CHECK(scenario_name(config) == "LC-BCR-negative-circle");
}

TEST_CASE("config file round-trip and missing content text defaults") {
  const auto dir = std::filesystem::temp_directory_path() / "asymsim_core_test";
  std::filesystem::create_directories(dir);
  ScenarioConfig config = default_config(
      ContentKind::PP, DistributionMechanism::OA, Topology::wheel, Polarity::positive);
  const auto path = dir / "config.json";
  save_config(config, path);
  CHECK(load_config(path) == config);

  nlohmann::json no_text = config_to_json(config);
  no_text["content"].erase("text");
  CHECK(config_from_json(no_text).content.text == default_content(ContentKind::PP).text);

  CHECK_THROWS_AS(load_config(dir / "missing.json"), IoError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::array()), ConfigError);
}

TEST_CASE("bundled scenarios cover the full matrix") {
  const auto scenarios = bundled_scenarios();
  CHECK(scenarios.size() == 48);
  std::set<std::string> names;
  for (const auto& config : scenarios) {
    CHECK(validate_config(config).empty());
    names.insert(scenario_name(config));
  }
  CHECK(names.size() == 48);
}

}  // TEST_SUITE
