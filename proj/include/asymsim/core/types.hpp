#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace asymsim {

// Agents are identified by positive integers; the initial group is 1..5 and
// recruits take max-existing-id + 1. Two reserved values live outside that
// range: kEnvSender (0) marks messages injected by the environment, and
// kNewRecruit (-1) marks a send/relationship target that refers to the
// action's own recruit before an id has been assigned.
using AgentId = std::int64_t;

inline constexpr AgentId kEnvSender = 0;
inline constexpr AgentId kNewRecruit = -1;
inline constexpr int kInitialAgentCount = 5;

inline bool is_agent(AgentId id) { return id > 0; }

enum class RelationshipKind { positive, negative, general };
enum class Topology { wheel, circle };
enum class ContentKind { OG, PP, LC, SH };
enum class DistributionMechanism { BC, OA, BCR };
enum class Polarity { positive, negative };

std::string_view to_string(RelationshipKind k);
std::string_view to_string(Topology t);
std::string_view to_string(ContentKind k);
std::string_view to_string(DistributionMechanism m);
std::string_view to_string(Polarity p);

std::optional<RelationshipKind> relationship_from_string(std::string_view s);
std::optional<Topology> topology_from_string(std::string_view s);
std::optional<ContentKind> content_kind_from_string(std::string_view s);
std::optional<DistributionMechanism> mechanism_from_string(std::string_view s);
std::optional<Polarity> polarity_from_string(std::string_view s);

struct AgentProfile {
  AgentId id = 0;
  int age = 0;
  std::string gender;
  std::vector<std::string> innate;
  std::string occupation;

  bool operator==(const AgentProfile&) const = default;
};

// Directed, per-owner relationship map. A missing entry means the owner does
// not know that agent at all, which is distinct from RelationshipKind::general.
struct RelationshipView {
  AgentId owner = 0;
  std::map<AgentId, RelationshipKind> entries;

  std::optional<RelationshipKind> kind_of(AgentId other) const {
    auto it = entries.find(other);
    if (it == entries.end()) return std::nullopt;
    return it->second;
  }

  bool operator==(const RelationshipView&) const = default;
};

struct InfoContent {
  ContentKind kind = ContentKind::OG;
  std::string text;

  bool operator==(const InfoContent&) const = default;
};

// A single directed message. `round` is the round in which the sender acted;
// environment seeds are visible to the receiver in that same round, peer
// messages in the following round.
struct Message {
  int round = 0;
  AgentId sender = kEnvSender;
  AgentId receiver = 0;
  std::string content;

  bool operator==(const Message&) const = default;
};

struct SendPart {
  AgentId receiver = 0;  // kNewRecruit until validation assigns the real id
  std::string content;

  bool operator==(const SendPart&) const = default;
};

struct RelationshipChange {
  AgentId target = 0;
  RelationshipKind kind = RelationshipKind::general;

  bool operator==(const RelationshipChange&) const = default;
};

struct RecruitPart {
  AgentProfile profile;  // profile.id is assigned during validation
  RelationshipKind initial_relationship = RelationshipKind::general;

  bool operator==(const RecruitPart&) const = default;
};

// One agent's decision for one round: at most one send, any number of
// relationship edits to its own view, at most one recruit.
struct Action {
  AgentId actor = 0;
  int round = 0;
  std::optional<SendPart> send;
  std::vector<RelationshipChange> relationship_changes;
  std::optional<RecruitPart> recruit;

  bool is_noop() const {
    return !send && relationship_changes.empty() && !recruit;
  }

  bool operator==(const Action&) const = default;
};

}  // namespace asymsim
