#include "asymsim/store/json_codec.hpp"

#include "asymsim/core/errors.hpp"

namespace asymsim {

RelationshipKind relationship_kind_from_json(const nlohmann::json& j) {
  if (!j.is_string()) throw ParseError("relationship kind must be a string");
  auto kind = relationship_from_string(j.get<std::string>());
  if (!kind) throw ParseError("unknown relationship kind: " + j.get<std::string>());
  return *kind;
}

nlohmann::ordered_json profile_to_json(const AgentProfile& profile) {
  nlohmann::ordered_json j;
  j["id"] = profile.id;
  j["age"] = profile.age;
  j["gender"] = profile.gender;
  j["innate"] = profile.innate;
  j["occupation"] = profile.occupation;
  return j;
}

AgentProfile profile_from_json(const nlohmann::json& j) {
  AgentProfile profile;
  profile.id = j.at("id").get<AgentId>();
  profile.age = j.at("age").get<int>();
  profile.gender = j.at("gender").get<std::string>();
  profile.innate = j.at("innate").get<std::vector<std::string>>();
  profile.occupation = j.at("occupation").get<std::string>();
  return profile;
}

nlohmann::ordered_json message_to_json(const Message& message) {
  nlohmann::ordered_json j;
  j["round"] = message.round;
  j["sender"] = message.sender;
  j["receiver"] = message.receiver;
  j["content"] = message.content;
  return j;
}

Message message_from_json(const nlohmann::json& j) {
  Message message;
  message.round = j.at("round").get<int>();
  message.sender = j.at("sender").get<AgentId>();
  message.receiver = j.at("receiver").get<AgentId>();
  message.content = j.at("content").get<std::string>();
  return message;
}

nlohmann::ordered_json action_to_json(const Action& action) {
  nlohmann::ordered_json j;
  j["actor"] = action.actor;
  j["round"] = action.round;
  if (action.send) {
    j["send"] = {{"receiver", action.send->receiver},
                 {"content", action.send->content}};
  }
  if (!action.relationship_changes.empty()) {
    nlohmann::ordered_json changes = nlohmann::ordered_json::array();
    for (const auto& change : action.relationship_changes) {
      changes.push_back(
          {{"target", change.target}, {"kind", to_string(change.kind)}});
    }
    j["relationship_changes"] = std::move(changes);
  }
  if (action.recruit) {
    j["recruit"] = {{"profile", profile_to_json(action.recruit->profile)},
                    {"relationship", to_string(action.recruit->initial_relationship)}};
  }
  return j;
}

Action action_from_json(const nlohmann::json& j) {
  Action action;
  action.actor = j.at("actor").get<AgentId>();
  action.round = j.at("round").get<int>();
  if (j.contains("send")) {
    action.send = SendPart{j.at("send").at("receiver").get<AgentId>(),
                           j.at("send").at("content").get<std::string>()};
  }
  if (j.contains("relationship_changes")) {
    for (const auto& item : j.at("relationship_changes")) {
      action.relationship_changes.push_back(
          {item.at("target").get<AgentId>(),
           relationship_kind_from_json(item.at("kind"))});
    }
  }
  if (j.contains("recruit")) {
    action.recruit =
        RecruitPart{profile_from_json(j.at("recruit").at("profile")),
                    relationship_kind_from_json(j.at("recruit").at("relationship"))};
  }
  return action;
}

nlohmann::ordered_json views_to_json(const std::map<AgentId, RelationshipView>& views) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [owner, view] : views) {
    nlohmann::ordered_json entries = nlohmann::ordered_json::object();
    for (const auto& [target, kind] : view.entries) {
      entries[std::to_string(target)] = to_string(kind);
    }
    j[std::to_string(owner)] = std::move(entries);
  }
  return j;
}

std::map<AgentId, RelationshipView> views_from_json(const nlohmann::json& j) {
  std::map<AgentId, RelationshipView> views;
  if (!j.is_object()) throw ParseError("views must be an object");
  for (const auto& [owner_str, entries] : j.items()) {
    RelationshipView view;
    view.owner = std::stoll(owner_str);
    for (const auto& [target_str, kind] : entries.items()) {
      view.entries[std::stoll(target_str)] = relationship_kind_from_json(kind);
    }
    views[view.owner] = std::move(view);
  }
  return views;
}

}  // namespace asymsim
