#pragma once

#include <map>

#include "asymsim/core/types.hpp"

#include "json.hpp"

namespace asymsim {

// Shared JSON shapes for log and snapshot records. All writers use
// ordered_json with fixed insertion order so identical runs serialize to
// identical bytes.

nlohmann::ordered_json profile_to_json(const AgentProfile& profile);
AgentProfile profile_from_json(const nlohmann::json& j);

nlohmann::ordered_json message_to_json(const Message& message);
Message message_from_json(const nlohmann::json& j);

nlohmann::ordered_json action_to_json(const Action& action);
Action action_from_json(const nlohmann::json& j);

nlohmann::ordered_json views_to_json(const std::map<AgentId, RelationshipView>& views);
std::map<AgentId, RelationshipView> views_from_json(const nlohmann::json& j);

RelationshipKind relationship_kind_from_json(const nlohmann::json& j);

}  // namespace asymsim
