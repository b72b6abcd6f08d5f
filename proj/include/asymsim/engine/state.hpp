#pragma once

#include <map>
#include <random>
#include <vector>

#include "asymsim/core/config.hpp"
#include "asymsim/core/types.hpp"
#include "asymsim/engine/run_log.hpp"

namespace asymsim {

// Mutable world state between rounds. `round` counts completed rounds, so a
// fresh state has round 0 and a finished default run has round 10.
struct SimulationState {
  int round = 0;
  std::map<AgentId, AgentProfile> roster;
  std::map<AgentId, RelationshipView> views;
  std::vector<Message> message_log;
  std::vector<Action> action_log;  // accepted actions only
  std::map<AgentId, AgentId> lineage;  // initial agents map to themselves
  std::mt19937_64 rng;

  bool operator==(const SimulationState&) const = default;
};

SimulationState make_initial_state(const ScenarioConfig& config);

StateSummary summarize(const SimulationState& state);

}  // namespace asymsim
