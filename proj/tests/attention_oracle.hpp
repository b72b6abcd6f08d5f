#pragma once

// Straight-line re-implementation of the attention weighting, written
// independently of compute_attention so the two can check each other. Keeps
// the pseudocode shape: explicit dicts, one pass per stage.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "asymsim/attention/attention.hpp"
#include "asymsim/attention/entropy.hpp"

namespace asymsim::testing {

// Independent entropy: token counts via ordered map, -sum(p log2 p) over the
// sorted count multiset (the published canonical reduction order).
inline double oracle_entropy(const std::vector<std::string>& texts) {
  std::map<std::string, int> counts;
  int total = 0;
  for (const auto& text : texts) {
    for (const auto& token : tokenize(text)) {
      counts[token] += 1;
      total += 1;
    }
  }
  if (total == 0) return 0.0;
  std::vector<int> sorted_counts;
  for (const auto& [token, count] : counts) sorted_counts.push_back(count);
  std::sort(sorted_counts.begin(), sorted_counts.end());
  double h = 0.0;
  for (int count : sorted_counts) {
    const double p = static_cast<double>(count) / total;
    h += -p * std::log2(p);
  }
  return h == 0.0 ? 0.0 : h;
}

inline std::vector<WeightedMessage> attention_oracle(const AttentionInput& in) {
  const auto order_key = [](AgentId s) {
    return s == kEnvSender ? std::numeric_limits<std::int64_t>::max() : s;
  };

  // Stage 1: split current from previous.
  struct Entry {
    AgentId sender;
    std::string content;
    int weight = 0;
  };
  std::vector<Entry> weight_dict;
  std::map<AgentId, std::vector<std::string>> prev_dict;
  for (const auto& rm : in.received_messages) {
    if (rm.round == in.turn_number) {
      weight_dict.push_back({rm.sender, rm.content, 0});
    } else if (rm.round < in.turn_number) {
      prev_dict[rm.sender].push_back(rm.content);
    }
  }
  if (weight_dict.empty()) return {};

  // Stage 2: relationship base.
  for (auto& entry : weight_dict) {
    if (entry.sender == kEnvSender) {
      entry.weight = 0;
      continue;
    }
    auto it = in.relationships.entries.find(entry.sender);
    if (it == in.relationships.entries.end()) {
      entry.weight = -1;
    } else if (it->second == RelationshipKind::positive ||
               it->second == RelationshipKind::negative) {
      entry.weight = 1;
    } else {
      entry.weight = 0;
    }
  }

  // Stage 3: max-entropy sender over current messages.
  AgentId max_agent = weight_dict.front().sender;
  double max_entropy = -1.0;
  bool first = true;
  for (const auto& entry : weight_dict) {
    const double e = oracle_entropy({entry.content});
    if (first || e > max_entropy ||
        (e == max_entropy && order_key(entry.sender) < order_key(max_agent))) {
      max_entropy = e;
      max_agent = entry.sender;
      first = false;
    }
  }
  for (auto& entry : weight_dict) {
    entry.weight += entry.sender == max_agent ? 1 : -1;
  }

  // Stage 4: entropy delta against the sender's previous messages.
  for (auto& entry : weight_dict) {
    auto it = prev_dict.find(entry.sender);
    if (it == prev_dict.end()) continue;
    const double prev_entropy = oracle_entropy(it->second);
    std::vector<std::string> pooled = it->second;
    pooled.push_back(entry.content);
    const double curr_entropy = oracle_entropy(pooled);
    entry.weight += curr_entropy > prev_entropy ? 1 : -1;
  }

  // Stage 5: most frequent past send target.
  std::map<AgentId, int> counter;
  for (const auto& action : in.past_actions) {
    if (action.send) counter[action.send->receiver] += 1;
  }
  if (!counter.empty()) {
    AgentId top_agent = counter.begin()->first;
    int top_count = counter.begin()->second;
    for (const auto& [id, count] : counter) {
      if (count > top_count) {
        top_count = count;
        top_agent = id;
      }
    }
    for (auto& entry : weight_dict) {
      entry.weight += entry.sender == top_agent ? 1 : -1;
    }
  }

  std::sort(weight_dict.begin(), weight_dict.end(),
            [&](const Entry& a, const Entry& b) {
              if (a.weight != b.weight) return a.weight > b.weight;
              if (order_key(a.sender) != order_key(b.sender)) {
                return order_key(a.sender) < order_key(b.sender);
              }
              return a.content < b.content;
            });

  std::vector<WeightedMessage> out;
  for (const auto& entry : weight_dict) {
    out.push_back({entry.sender, entry.weight, entry.content});
  }
  return out;
}

}  // namespace asymsim::testing
