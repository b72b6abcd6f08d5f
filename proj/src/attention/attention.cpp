#include "asymsim/attention/attention.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>

#include "asymsim/attention/entropy.hpp"

namespace asymsim {

namespace {

// Sort key that puts the environment after every real agent.
std::int64_t sender_order_key(AgentId sender) {
  return sender == kEnvSender ? std::numeric_limits<std::int64_t>::max() : sender;
}

}  // namespace

std::vector<WeightedMessage> compute_attention(const AttentionInput& input) {
  struct Row {
    AgentId sender;
    const std::string* content;
    double entropy;
    int weight;
  };

  std::vector<Row> rows;
  std::map<AgentId, std::vector<std::string>> previous_by_sender;
  for (const auto& msg : input.received_messages) {
    if (msg.round == input.turn_number) {
      rows.push_back({msg.sender, &msg.content, text_entropy(msg.content), 0});
    } else if (msg.round < input.turn_number) {
      previous_by_sender[msg.sender].push_back(msg.content);
    }
  }
  if (rows.empty()) return {};

  // Base weight from the agent's current view of each sender.
  for (auto& row : rows) {
    if (row.sender == kEnvSender) {
      row.weight = 0;
      continue;
    }
    auto kind = input.relationships.kind_of(row.sender);
    if (!kind) {
      row.weight = -1;
    } else if (*kind == RelationshipKind::general) {
      row.weight = 0;
    } else {
      row.weight = 1;
    }
  }

  // Highest-entropy current message marks the novelty winner.
  AgentId max_entropy_sender = rows.front().sender;
  double max_entropy = rows.front().entropy;
  for (const auto& row : rows) {
    if (row.entropy > max_entropy ||
        (row.entropy == max_entropy &&
         sender_order_key(row.sender) < sender_order_key(max_entropy_sender))) {
      max_entropy = row.entropy;
      max_entropy_sender = row.sender;
    }
  }
  for (auto& row : rows) {
    row.weight += row.sender == max_entropy_sender ? 1 : -1;
  }

  // Entropy change of each already-known sender's message set.
  for (auto& row : rows) {
    auto it = previous_by_sender.find(row.sender);
    if (it == previous_by_sender.end()) continue;
    const double prev_entropy = set_entropy(it->second);
    std::vector<std::string> pooled = it->second;
    pooled.push_back(*row.content);
    const double curr_entropy = set_entropy(pooled);
    row.weight += curr_entropy > prev_entropy ? 1 : -1;
  }

  // Most frequent past send target of the agent itself.
  std::map<AgentId, std::size_t> send_counts;
  for (const auto& action : input.past_actions) {
    if (action.send) ++send_counts[action.send->receiver];
  }
  if (!send_counts.empty()) {
    AgentId top_recipient = send_counts.begin()->first;  // map order breaks ties low
    std::size_t top_count = send_counts.begin()->second;
    for (const auto& [recipient, count] : send_counts) {
      if (count > top_count) {
        top_count = count;
        top_recipient = recipient;
      }
    }
    for (auto& row : rows) {
      row.weight += row.sender == top_recipient ? 1 : -1;
    }
  }

  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    const auto ka = sender_order_key(a.sender);
    const auto kb = sender_order_key(b.sender);
    if (ka != kb) return ka < kb;
    return *a.content < *b.content;
  });

  std::vector<WeightedMessage> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    out.push_back({row.sender, row.weight, *row.content});
  }
  return out;
}

}  // namespace asymsim
