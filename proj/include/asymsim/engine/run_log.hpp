#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "asymsim/core/config.hpp"
#include "asymsim/core/types.hpp"

namespace asymsim {

// Environment seed, recorded as an ordinary message with sender kEnvSender.
struct SeedEvent {
  Message message;
  bool operator==(const SeedEvent&) const = default;
};

// A message sent by an agent in `message.round`, delivered next round.
struct MessageEvent {
  Message message;
  bool operator==(const MessageEvent&) const = default;
};

// An accepted non-noop action (ids already assigned), or a no-op that
// carries a note such as a transport failure reason.
struct DecisionEvent {
  int round = 0;
  AgentId actor = 0;
  Action action;
  std::string note;
  bool operator==(const DecisionEvent&) const = default;
};

struct RelationshipChangeEvent {
  int round = 0;
  AgentId actor = 0;
  AgentId target = 0;
  std::optional<RelationshipKind> old_kind;  // absent when the entry is new
  RelationshipKind new_kind = RelationshipKind::general;
  bool operator==(const RelationshipChangeEvent&) const = default;
};

struct RecruitEvent {
  int round = 0;
  AgentId recruiter = 0;
  AgentProfile profile;  // carries the assigned id
  RelationshipKind relationship = RelationshipKind::general;
  bool operator==(const RecruitEvent&) const = default;
};

// A proposed action the engine refused; the run continues.
struct RejectionEvent {
  int round = 0;
  AgentId actor = 0;
  std::string reason;
  Action action;
  bool operator==(const RejectionEvent&) const = default;
};

struct RoundBoundaryEvent {
  int round = 0;
  std::size_t roster_size = 0;
  bool operator==(const RoundBoundaryEvent&) const = default;
};

using Event = std::variant<SeedEvent, MessageEvent, DecisionEvent,
                           RelationshipChangeEvent, RecruitEvent, RejectionEvent,
                           RoundBoundaryEvent>;

struct StateSummary {
  std::size_t roster_size = 0;
  std::map<AgentId, RelationshipView> views;
  bool operator==(const StateSummary&) const = default;
};

// Complete record of one run. Replaying `events` from `config` reproduces
// `final_summary` exactly; everything the metrics need is in the events.
struct RunLog {
  ScenarioConfig config;
  std::vector<Event> events;
  StateSummary final_summary;
};

// Rebuilds the final roster size and views from the configured initial state
// plus the recruit and relationship-change events.
StateSummary replay_summary(const ScenarioConfig& config,
                            const std::vector<Event>& events);

}  // namespace asymsim
