#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asymsim/attention/attention.hpp"
#include "asymsim/core/config.hpp"
#include "asymsim/engine/run_log.hpp"
#include "asymsim/engine/state.hpp"
#include "asymsim/policy/policy.hpp"

namespace asymsim {

// Environment messages injected at the start of `round`:
//   BC  - round 1 only, to every initial agent;
//   OA  - round 1 only, to agent 2;
//   BCR - one initial agent per round in ascending order, rounds 1..5.
std::vector<Message> seed_messages(const ScenarioConfig& config, int round);

// Inbox view for one agent deciding in `round`: current messages are this
// round's environment seeds plus peer messages sent in round-1; everything
// delivered earlier is previous. Past actions are the agent's own accepted
// actions from earlier rounds.
AttentionInput visible_messages(const SimulationState& state, AgentId agent,
                                int round);

struct ValidationOutcome {
  std::optional<Action> accepted;  // ids assigned; empty on rejection
  std::string reason;
};

// Checks one proposed action against the pre-round state plus the actions
// already accepted this round. An accepted recruit gets `next_recruit_id`,
// and kNewRecruit send/relationship targets are rewritten to it. Rejections
// are whole-action and carry every reason found.
ValidationOutcome validate_action(const SimulationState& state,
                                  const ScenarioConfig& config,
                                  std::span<const Action> pending_accepted,
                                  AgentId next_recruit_id, const Action& proposed);

// Applies validated actions in ascending actor order: recruits join the
// roster with mutual relationship entries, relationship changes rewrite the
// actor's own view, and messages are queued for next-round delivery. Effect
// events are appended to `events` when given.
void apply_actions(SimulationState& state, std::span<const Action> accepted,
                   std::vector<Event>* events = nullptr);

// Round-driven simulation. Policies are queried against the immutable
// pre-round state (optionally in parallel) and their results are validated
// and applied in ascending actor-id order, so the outcome never depends on
// completion order. A resumed simulation emits only the events of the rounds
// it runs; callers stitch logs together for a full-file view.
class Simulation {
 public:
  Simulation(ScenarioConfig config, std::shared_ptr<const Policy> policy);
  Simulation(ScenarioConfig config, std::shared_ptr<const Policy> policy,
             SimulationState resumed);

  bool done() const { return state_.round >= config_.rounds; }
  void step();

  // Number of concurrent policy queries within a round (1 = sequential).
  void set_decision_parallelism(int n);

  const ScenarioConfig& config() const { return config_; }
  const SimulationState& state() const { return state_; }
  const RunLog& log() const { return log_; }

  // Fills log().final_summary from the current state.
  void finalize();

  RunLog run_to_completion();

 private:
  void decide_all(int round, std::vector<Decision>& decisions,
                  const std::vector<AgentId>& actors);

  ScenarioConfig config_;
  std::shared_ptr<const Policy> policy_;
  SimulationState state_;
  RunLog log_;
  int decision_parallelism_ = 1;
};

// Convenience wrapper: fresh state, all rounds, finalized log.
RunLog run(const ScenarioConfig& config, std::shared_ptr<const Policy> policy);

}  // namespace asymsim
