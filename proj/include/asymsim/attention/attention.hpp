#pragma once

#include <string>
#include <vector>

#include "asymsim/core/types.hpp"

namespace asymsim {

// A message as seen from one agent's inbox. `round` is the round in which the
// message became visible to the agent (its delivery round).
struct ReceivedMessage {
  int round = 0;
  AgentId sender = kEnvSender;
  std::string content;

  bool operator==(const ReceivedMessage&) const = default;
};

struct AttentionInput {
  AgentId self_id = 0;
  std::vector<ReceivedMessage> received_messages;  // delivery rounds <= turn_number
  int turn_number = 1;
  std::vector<Action> past_actions;  // the agent's own earlier accepted actions
  RelationshipView relationships;
};

struct WeightedMessage {
  AgentId sender = kEnvSender;
  int weight = 0;
  std::string content;

  bool operator==(const WeightedMessage&) const = default;
};

// Weights every current-round message through four adjustments on top of a
// relationship base score:
//   base: +1 positive/negative sender, 0 general (the environment counts as
//         general), -1 sender absent from the agent's view;
//   novelty: the sender of the highest-entropy current message gets +1,
//         every other current sender -1 (ties: lowest sender id, env last);
//   history: senders already heard from before get +1 when adding the current
//         message raises the pooled entropy of their message set, else -1;
//   habit: when the agent has sent before, its most frequent past recipient
//         (ties: lowest id) gets +1 as a sender, every other current
//         sender -1.
// Result is ordered by weight descending, then sender id ascending with the
// environment last, then content; weights always land in [-4, +4].
std::vector<WeightedMessage> compute_attention(const AttentionInput& input);

}  // namespace asymsim
