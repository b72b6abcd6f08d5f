#include "asymsim/policy/prompt.hpp"

#include <sstream>

#include "json.hpp"

namespace asymsim {

namespace {

std::string sender_label(AgentId sender) {
  return sender == kEnvSender ? std::string("ENV")
                              : "agent " + std::to_string(sender);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' ||
                        s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Drops a surrounding ``` or ```json fence if present.
std::string_view strip_code_fence(std::string_view s) {
  s = trim(s);
  if (s.substr(0, 3) != "```") return s;
  const auto first_newline = s.find('\n');
  if (first_newline == std::string_view::npos) return s;
  s.remove_prefix(first_newline + 1);
  const auto closing = s.rfind("```");
  if (closing != std::string_view::npos) s = s.substr(0, closing);
  return trim(s);
}

}  // namespace

std::string decision_system_prompt() {
  return "You are one agent in a group messaging simulation. Each round you may "
         "send one message, adjust how you see other agents, and recruit one new "
         "agent; all parts are optional and can be combined. Reply with exactly "
         "one JSON object and nothing else.";
}

std::string render_decision_prompt(const DecisionRequest& request) {
  std::ostringstream out;
  const AgentProfile& self = request.self_profile;

  out << "Round: " << request.round << "\n";
  out << "You are agent " << self.id << ": age " << self.age << ", " << self.gender
      << "; traits:";
  for (std::size_t i = 0; i < self.innate.size(); ++i) {
    out << (i ? ", " : " ") << self.innate[i];
  }
  out << "; " << self.occupation << "\n\n";

  out << "Your relationships (agents not listed are unknown to you):\n";
  if (request.relationships.entries.empty()) {
    out << "  none\n";
  }
  for (const auto& [other, kind] : request.relationships.entries) {
    out << "  agent " << other << ": " << to_string(kind) << "\n";
  }

  out << "\nGroup members:\n";
  for (const auto& [id, profile] : request.roster_profiles) {
    out << "  agent " << id << ": age " << profile.age << ", " << profile.gender
        << ", " << profile.occupation << "\n";
  }

  out << "\nMessages you received this round, ordered by your attention:\n";
  if (request.attention.empty()) {
    out << "  (none)\n";
  }
  for (const auto& msg : request.attention) {
    out << "  [" << sender_label(msg.sender) << "] (" << msg.weight << ") ["
        << msg.content << "]\n";
  }

  out << "\nRespond with one JSON object of this shape (every field optional; "
         "{} means do nothing):\n"
         "{\"send\": {\"to\": <agent id or \"new\">, \"content\": \"<text>\"},\n"
         " \"relationship_changes\": [{\"target\": <agent id>, \"kind\": "
         "\"positive|negative|general\"}],\n"
         " \"new_agent\": {\"age\": <years>, \"gender\": \"<text>\", \"innate\": "
         "[\"<trait>\"], \"occupation\": \"<text>\", \"relationship\": "
         "\"positive|negative|general\"}}\n"
         "Use \"to\": \"new\" to message the agent you recruit this round.\n";
  return out.str();
}

std::optional<Action> parse_action_reply(std::string_view reply, std::string& error) {
  const std::string_view body = strip_code_fence(reply);
  const nlohmann::json j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_discarded()) {
    error = "reply is not valid JSON";
    return std::nullopt;
  }
  if (!j.is_object()) {
    error = "reply is not a JSON object";
    return std::nullopt;
  }

  Action action;
  if (j.contains("send") && !j.at("send").is_null()) {
    const auto& send = j.at("send");
    if (!send.is_object() || !send.contains("to") || !send.contains("content") ||
        !send.at("content").is_string()) {
      error = "send must be {to, content}";
      return std::nullopt;
    }
    AgentId receiver = 0;
    const auto& to = send.at("to");
    if (to.is_number_integer()) {
      receiver = to.get<AgentId>();
    } else if (to.is_string() && to.get<std::string>() == "new") {
      receiver = kNewRecruit;
    } else {
      error = "send.to must be an agent id or \"new\"";
      return std::nullopt;
    }
    action.send = SendPart{receiver, send.at("content").get<std::string>()};
  }

  if (j.contains("relationship_changes") && !j.at("relationship_changes").is_null()) {
    const auto& changes = j.at("relationship_changes");
    if (!changes.is_array()) {
      error = "relationship_changes must be an array";
      return std::nullopt;
    }
    for (const auto& item : changes) {
      if (!item.is_object() || !item.contains("target") ||
          !item.at("target").is_number_integer() || !item.contains("kind") ||
          !item.at("kind").is_string()) {
        error = "relationship change must be {target, kind}";
        return std::nullopt;
      }
      auto kind = relationship_from_string(item.at("kind").get<std::string>());
      if (!kind) {
        error = "unknown relationship kind: " + item.at("kind").get<std::string>();
        return std::nullopt;
      }
      action.relationship_changes.push_back(
          {item.at("target").get<AgentId>(), *kind});
    }
  }

  if (j.contains("new_agent") && !j.at("new_agent").is_null()) {
    const auto& recruit = j.at("new_agent");
    if (!recruit.is_object() || !recruit.contains("age") ||
        !recruit.at("age").is_number_integer() || !recruit.contains("gender") ||
        !recruit.at("gender").is_string() || !recruit.contains("innate") ||
        !recruit.at("innate").is_array() || !recruit.contains("occupation") ||
        !recruit.at("occupation").is_string() || !recruit.contains("relationship") ||
        !recruit.at("relationship").is_string()) {
      error = "new_agent must be {age, gender, innate, occupation, relationship}";
      return std::nullopt;
    }
    auto kind =
        relationship_from_string(recruit.at("relationship").get<std::string>());
    if (!kind) {
      error = "unknown relationship kind: " +
              recruit.at("relationship").get<std::string>();
      return std::nullopt;
    }
    AgentProfile profile;
    profile.age = recruit.at("age").get<int>();
    profile.gender = recruit.at("gender").get<std::string>();
    for (const auto& trait : recruit.at("innate")) {
      if (!trait.is_string()) {
        error = "new_agent.innate must contain strings";
        return std::nullopt;
      }
      profile.innate.push_back(trait.get<std::string>());
    }
    profile.occupation = recruit.at("occupation").get<std::string>();
    action.recruit = RecruitPart{std::move(profile), *kind};
  }

  return action;
}

}  // namespace asymsim
