#include "asymsim/store/run_log_io.hpp"

#include <fstream>

#include "asymsim/core/errors.hpp"
#include "asymsim/store/json_codec.hpp"

namespace asymsim {

namespace {

constexpr const char* kSchemaName = "asymsim.runlog";

nlohmann::ordered_json event_to_json(const Event& event) {
  nlohmann::ordered_json j;
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, SeedEvent>) {
          j["kind"] = "seed";
          j["round"] = e.message.round;
          j["sender"] = e.message.sender;
          j["receiver"] = e.message.receiver;
          j["content"] = e.message.content;
        } else if constexpr (std::is_same_v<T, MessageEvent>) {
          j["kind"] = "message";
          j["round"] = e.message.round;
          j["sender"] = e.message.sender;
          j["receiver"] = e.message.receiver;
          j["content"] = e.message.content;
        } else if constexpr (std::is_same_v<T, DecisionEvent>) {
          j["kind"] = "decision";
          j["round"] = e.round;
          j["actor"] = e.actor;
          j["action"] = action_to_json(e.action);
          if (!e.note.empty()) j["note"] = e.note;
        } else if constexpr (std::is_same_v<T, RelationshipChangeEvent>) {
          j["kind"] = "relationship_change";
          j["round"] = e.round;
          j["actor"] = e.actor;
          j["target"] = e.target;
          if (e.old_kind) {
            j["old"] = to_string(*e.old_kind);
          } else {
            j["old"] = nullptr;
          }
          j["new"] = to_string(e.new_kind);
        } else if constexpr (std::is_same_v<T, RecruitEvent>) {
          j["kind"] = "recruit";
          j["round"] = e.round;
          j["recruiter"] = e.recruiter;
          j["profile"] = profile_to_json(e.profile);
          j["relationship"] = to_string(e.relationship);
        } else if constexpr (std::is_same_v<T, RejectionEvent>) {
          j["kind"] = "rejection";
          j["round"] = e.round;
          j["actor"] = e.actor;
          j["reason"] = e.reason;
          j["action"] = action_to_json(e.action);
        } else if constexpr (std::is_same_v<T, RoundBoundaryEvent>) {
          j["kind"] = "round_boundary";
          j["round"] = e.round;
          j["roster_size"] = e.roster_size;
        }
      },
      event);
  return j;
}

Event event_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "seed") return SeedEvent{message_from_json(j)};
  if (kind == "message") return MessageEvent{message_from_json(j)};
  if (kind == "decision") {
    DecisionEvent e;
    e.round = j.at("round").get<int>();
    e.actor = j.at("actor").get<AgentId>();
    e.action = action_from_json(j.at("action"));
    if (j.contains("note")) e.note = j.at("note").get<std::string>();
    return e;
  }
  if (kind == "relationship_change") {
    RelationshipChangeEvent e;
    e.round = j.at("round").get<int>();
    e.actor = j.at("actor").get<AgentId>();
    e.target = j.at("target").get<AgentId>();
    if (!j.at("old").is_null()) e.old_kind = relationship_kind_from_json(j.at("old"));
    e.new_kind = relationship_kind_from_json(j.at("new"));
    return e;
  }
  if (kind == "recruit") {
    RecruitEvent e;
    e.round = j.at("round").get<int>();
    e.recruiter = j.at("recruiter").get<AgentId>();
    e.profile = profile_from_json(j.at("profile"));
    e.relationship = relationship_kind_from_json(j.at("relationship"));
    return e;
  }
  if (kind == "rejection") {
    RejectionEvent e;
    e.round = j.at("round").get<int>();
    e.actor = j.at("actor").get<AgentId>();
    e.reason = j.at("reason").get<std::string>();
    e.action = action_from_json(j.at("action"));
    return e;
  }
  if (kind == "round_boundary") {
    RoundBoundaryEvent e;
    e.round = j.at("round").get<int>();
    e.roster_size = j.at("roster_size").get<std::size_t>();
    return e;
  }
  throw ParseError("unknown record kind: " + kind);
}

}  // namespace

std::string serialize_header(const ScenarioConfig& config) {
  nlohmann::ordered_json j;
  j["kind"] = "header";
  j["schema"] = kSchemaName;
  j["version"] = kRunLogVersion;
  j["config"] = config_to_json(config);
  return j.dump();
}

std::string serialize_event(const Event& event) { return event_to_json(event).dump(); }

std::string serialize_summary(const StateSummary& summary) {
  nlohmann::ordered_json j;
  j["kind"] = "summary";
  j["roster_size"] = summary.roster_size;
  j["views"] = views_to_json(summary.views);
  return j.dump();
}

void write_run_log(const RunLog& log, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open run log for writing: " + path.string());
  out << serialize_header(log.config) << '\n';
  for (const auto& event : log.events) out << serialize_event(event) << '\n';
  out << serialize_summary(log.final_summary) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

RunLog read_run_log(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open run log: " + path.string());

  RunLog log;
  std::string line;
  std::size_t line_number = 0;
  bool have_header = false;
  bool have_summary = false;

  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const auto where = [&] { return path.string() + ":" + std::to_string(line_number); };
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) throw ParseError(where() + ": malformed JSON record");
    try {
      const std::string kind = j.at("kind").get<std::string>();
      if (!have_header) {
        if (kind != "header") throw ParseError(where() + ": missing header");
        if (j.at("schema").get<std::string>() != kSchemaName) {
          throw ParseError(where() + ": unknown schema " +
                           j.at("schema").get<std::string>());
        }
        const int version = j.at("version").get<int>();
        if (version != kRunLogVersion) {
          throw ParseError(where() + ": unsupported log version " +
                           std::to_string(version));
        }
        log.config = config_from_json(j.at("config"));
        have_header = true;
        continue;
      }
      if (have_summary) throw ParseError(where() + ": record after summary");
      if (kind == "summary") {
        log.final_summary.roster_size = j.at("roster_size").get<std::size_t>();
        log.final_summary.views = views_from_json(j.at("views"));
        have_summary = true;
        continue;
      }
      log.events.push_back(event_from_json(j));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(where() + ": " + e.what());
    }
  }

  if (!have_header) throw ParseError(path.string() + ": missing header");
  if (!have_summary) throw ParseError(path.string() + ": missing final summary");
  return log;
}

}  // namespace asymsim
