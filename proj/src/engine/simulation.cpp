#include "asymsim/engine/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>
#include <utility>

#include "asymsim/core/defaults.hpp"
#include "asymsim/core/topology.hpp"
#include "asymsim/engine/state.hpp"

namespace asymsim {

SimulationState make_initial_state(const ScenarioConfig& config) {
  SimulationState state;
  for (const auto& profile : default_profiles()) {
    state.roster[profile.id] = profile;
    state.lineage[profile.id] = profile.id;
  }
  state.views = init_relationships(config.topology, config.initial_polarity);
  state.rng.seed(config.rng_seed);
  return state;
}

StateSummary summarize(const SimulationState& state) {
  return StateSummary{state.roster.size(), state.views};
}

std::vector<Message> seed_messages(const ScenarioConfig& config, int round) {
  std::vector<Message> seeds;
  switch (config.mechanism) {
    case DistributionMechanism::BC:
      if (round == 1) {
        for (AgentId a = 1; a <= kInitialAgentCount; ++a) {
          seeds.push_back({round, kEnvSender, a, config.content.text});
        }
      }
      break;
    case DistributionMechanism::OA:
      if (round == 1) {
        seeds.push_back({round, kEnvSender, 2, config.content.text});
      }
      break;
    case DistributionMechanism::BCR:
      if (round >= 1 && round <= kInitialAgentCount) {
        seeds.push_back({round, kEnvSender, round, config.content.text});
      }
      break;
  }
  return seeds;
}

AttentionInput visible_messages(const SimulationState& state, AgentId agent,
                                int round) {
  AttentionInput input;
  input.self_id = agent;
  input.turn_number = round;
  for (const auto& msg : state.message_log) {
    if (msg.receiver != agent) continue;
    // Peers deliver one round after sending; environment seeds are current
    // in the round they were injected.
    const int delivery = msg.sender == kEnvSender ? msg.round : msg.round + 1;
    if (delivery > round) continue;
    input.received_messages.push_back({delivery, msg.sender, msg.content});
  }
  for (const auto& action : state.action_log) {
    if (action.actor == agent && action.round < round) {
      input.past_actions.push_back(action);
    }
  }
  if (auto it = state.views.find(agent); it != state.views.end()) {
    input.relationships = it->second;
  } else {
    input.relationships.owner = agent;
  }
  return input;
}

ValidationOutcome validate_action(const SimulationState& state,
                                  const ScenarioConfig& config,
                                  std::span<const Action> pending_accepted,
                                  AgentId next_recruit_id, const Action& proposed) {
  std::vector<std::string> problems;
  if (!state.roster.contains(proposed.actor)) {
    problems.push_back("unknown actor " + std::to_string(proposed.actor));
  }

  int prior_sends = 0;
  int prior_recruits = 0;
  auto count_prior = [&](const Action& other) {
    if (other.actor != proposed.actor || other.round != proposed.round) return;
    if (other.send) ++prior_sends;
    if (other.recruit) ++prior_recruits;
  };
  for (const auto& other : state.action_log) count_prior(other);
  for (const auto& other : pending_accepted) count_prior(other);

  Action accepted = proposed;
  AgentId recruit_id = 0;
  if (proposed.recruit) {
    if (prior_recruits + 1 > config.max_recruits_per_agent_per_round) {
      problems.push_back("recruit cap exceeded");
    }
    const AgentProfile& profile = proposed.recruit->profile;
    if (profile.age <= 0) problems.push_back("recruit age must be positive");
    if (profile.gender.empty()) problems.push_back("recruit gender is empty");
    if (profile.occupation.empty()) problems.push_back("recruit occupation is empty");
    if (profile.innate.empty()) problems.push_back("recruit innate traits are empty");
    for (const auto& trait : profile.innate) {
      if (trait.empty()) {
        problems.push_back("recruit innate trait is empty");
        break;
      }
    }
    recruit_id = next_recruit_id;
    accepted.recruit->profile.id = recruit_id;
  }

  if (proposed.send) {
    if (prior_sends + 1 > config.max_sends_per_agent_per_round) {
      problems.push_back("send cap exceeded");
    }
    const AgentId receiver = proposed.send->receiver;
    if (receiver == kNewRecruit) {
      if (!proposed.recruit) {
        problems.push_back("send targets a recruit but none is declared");
      } else {
        accepted.send->receiver = recruit_id;
      }
    } else if (receiver == proposed.actor) {
      problems.push_back("send to self");
    } else if (!state.roster.contains(receiver)) {
      problems.push_back("unknown receiver " + std::to_string(receiver));
    }
  }

  for (std::size_t i = 0; i < proposed.relationship_changes.size(); ++i) {
    const AgentId target = proposed.relationship_changes[i].target;
    if (target == kNewRecruit) {
      if (!proposed.recruit) {
        problems.push_back("relationship change targets a recruit but none is declared");
      } else {
        accepted.relationship_changes[i].target = recruit_id;
      }
    } else if (target == proposed.actor) {
      problems.push_back("relationship change targets self");
    } else if (!state.roster.contains(target)) {
      problems.push_back("unknown relationship target " + std::to_string(target));
    }
  }

  if (!problems.empty()) {
    std::ostringstream reason;
    for (std::size_t i = 0; i < problems.size(); ++i) {
      if (i) reason << "; ";
      reason << problems[i];
    }
    return {std::nullopt, reason.str()};
  }
  return {std::move(accepted), ""};
}

void apply_actions(SimulationState& state, std::span<const Action> accepted,
                   std::vector<Event>* events) {
  for (const auto& action : accepted) {
    if (action.recruit) {
      const auto& part = *action.recruit;
      state.roster[part.profile.id] = part.profile;
      state.lineage[part.profile.id] = action.actor;
      state.views[action.actor].entries[part.profile.id] = part.initial_relationship;
      RelationshipView view;
      view.owner = part.profile.id;
      view.entries[action.actor] = part.initial_relationship;
      state.views[part.profile.id] = std::move(view);
      if (events) {
        events->push_back(RecruitEvent{action.round, action.actor, part.profile,
                                       part.initial_relationship});
      }
    }
    for (const auto& change : action.relationship_changes) {
      auto& entries = state.views[action.actor].entries;
      std::optional<RelationshipKind> old_kind;
      if (auto it = entries.find(change.target); it != entries.end()) {
        old_kind = it->second;
      }
      entries[change.target] = change.kind;
      if (events) {
        events->push_back(RelationshipChangeEvent{action.round, action.actor,
                                                  change.target, old_kind, change.kind});
      }
    }
    if (action.send) {
      Message msg{action.round, action.actor, action.send->receiver,
                  action.send->content};
      state.message_log.push_back(msg);
      if (events) events->push_back(MessageEvent{msg});
    }
    state.action_log.push_back(action);
  }
}

Simulation::Simulation(ScenarioConfig config, std::shared_ptr<const Policy> policy)
    : config_(std::move(config)), policy_(std::move(policy)),
      state_(make_initial_state(config_)) {
  log_.config = config_;
}

Simulation::Simulation(ScenarioConfig config, std::shared_ptr<const Policy> policy,
                       SimulationState resumed)
    : config_(std::move(config)), policy_(std::move(policy)),
      state_(std::move(resumed)) {
  log_.config = config_;
}

void Simulation::set_decision_parallelism(int n) {
  decision_parallelism_ = n < 1 ? 1 : n;
}

void Simulation::decide_all(int round, std::vector<Decision>& decisions,
                            const std::vector<AgentId>& actors) {
  auto decide_one = [&](std::size_t i) {
    const AgentId id = actors[i];
    try {
      AttentionInput input = visible_messages(state_, id, round);
      DecisionRequest request{state_.roster.at(id),
                              compute_attention(input),
                              state_.views.at(id),
                              state_.roster,
                              round,
                              agent_round_stream(config_.rng_seed, id, round)};
      decisions[i] = policy_->decide(request);
    } catch (const std::exception& e) {
      decisions[i] = Decision{Action{}, std::string("policy error: ") + e.what()};
    }
  };

  const std::size_t jobs = std::min<std::size_t>(
      static_cast<std::size_t>(decision_parallelism_), actors.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < actors.size(); ++i) decide_one(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (std::size_t t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= actors.size()) break;
        decide_one(i);
      }
    });
  }
  for (auto& worker : pool) worker.join();
}

void Simulation::step() {
  if (done()) return;
  const int round = state_.round + 1;

  for (const auto& seed : seed_messages(config_, round)) {
    state_.message_log.push_back(seed);
    log_.events.push_back(SeedEvent{seed});
  }

  std::vector<AgentId> actors;
  actors.reserve(state_.roster.size());
  for (const auto& [id, profile] : state_.roster) actors.push_back(id);

  std::vector<Decision> decisions(actors.size());
  decide_all(round, decisions, actors);

  AgentId next_recruit_id =
      state_.roster.empty() ? 1 : state_.roster.rbegin()->first + 1;
  std::vector<Action> accepted;
  for (std::size_t i = 0; i < actors.size(); ++i) {
    Decision& decision = decisions[i];
    decision.action.actor = actors[i];
    decision.action.round = round;
    if (decision.action.is_noop()) {
      if (!decision.note.empty()) {
        log_.events.push_back(
            DecisionEvent{round, actors[i], decision.action, decision.note});
      }
      continue;
    }
    auto outcome = validate_action(state_, config_, accepted, next_recruit_id,
                                   decision.action);
    if (outcome.accepted) {
      if (outcome.accepted->recruit) ++next_recruit_id;
      log_.events.push_back(
          DecisionEvent{round, actors[i], *outcome.accepted, decision.note});
      accepted.push_back(std::move(*outcome.accepted));
    } else {
      log_.events.push_back(
          RejectionEvent{round, actors[i], outcome.reason, decision.action});
    }
  }

  apply_actions(state_, accepted, &log_.events);
  state_.round = round;
  log_.events.push_back(RoundBoundaryEvent{round, state_.roster.size()});
}

void Simulation::finalize() { log_.final_summary = summarize(state_); }

RunLog Simulation::run_to_completion() {
  while (!done()) step();
  finalize();
  return log_;
}

RunLog run(const ScenarioConfig& config, std::shared_ptr<const Policy> policy) {
  Simulation sim(config, std::move(policy));
  return sim.run_to_completion();
}

}  // namespace asymsim
