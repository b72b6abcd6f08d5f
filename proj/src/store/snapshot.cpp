#include "asymsim/store/snapshot.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "asymsim/core/errors.hpp"
#include "asymsim/store/json_codec.hpp"

namespace asymsim {

namespace {

constexpr char kMagic[8] = {'A', 'S', 'Y', 'M', 'S', 'N', 'A', 'P'};

}  // namespace

std::vector<std::uint8_t> snapshot_state(const SimulationState& state) {
  nlohmann::ordered_json payload;
  payload["round"] = state.round;
  nlohmann::ordered_json roster = nlohmann::ordered_json::array();
  for (const auto& [id, profile] : state.roster) roster.push_back(profile_to_json(profile));
  payload["roster"] = std::move(roster);
  payload["views"] = views_to_json(state.views);
  nlohmann::ordered_json messages = nlohmann::ordered_json::array();
  for (const auto& msg : state.message_log) messages.push_back(message_to_json(msg));
  payload["message_log"] = std::move(messages);
  nlohmann::ordered_json actions = nlohmann::ordered_json::array();
  for (const auto& action : state.action_log) actions.push_back(action_to_json(action));
  payload["action_log"] = std::move(actions);
  nlohmann::ordered_json lineage = nlohmann::ordered_json::object();
  for (const auto& [id, recruiter] : state.lineage) {
    lineage[std::to_string(id)] = recruiter;
  }
  payload["lineage"] = std::move(lineage);
  std::ostringstream rng_text;
  rng_text << state.rng;
  payload["rng"] = rng_text.str();

  const std::vector<std::uint8_t> body = nlohmann::json::to_cbor(payload);
  std::vector<std::uint8_t> bytes;
  bytes.reserve(sizeof(kMagic) + 4 + body.size());
  for (char c : kMagic) bytes.push_back(static_cast<std::uint8_t>(c));
  for (int shift = 0; shift < 32; shift += 8) {
    bytes.push_back(static_cast<std::uint8_t>((kSnapshotVersion >> shift) & 0xff));
  }
  bytes.insert(bytes.end(), body.begin(), body.end());
  return bytes;
}

SimulationState restore_state(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < sizeof(kMagic) + 4 ||
      std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw ParseError("not a snapshot: bad magic");
  }
  std::uint32_t version = 0;
  for (int i = 0; i < 4; ++i) {
    version |= static_cast<std::uint32_t>(bytes[sizeof(kMagic) + i]) << (8 * i);
  }
  if (version != kSnapshotVersion) {
    throw ParseError("unsupported snapshot version " + std::to_string(version));
  }

  nlohmann::json payload;
  try {
    payload = nlohmann::json::from_cbor(bytes.subspan(sizeof(kMagic) + 4));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("corrupt snapshot payload: ") + e.what());
  }

  try {
    SimulationState state;
    state.round = payload.at("round").get<int>();
    for (const auto& item : payload.at("roster")) {
      AgentProfile profile = profile_from_json(item);
      state.roster[profile.id] = std::move(profile);
    }
    state.views = views_from_json(payload.at("views"));
    for (const auto& item : payload.at("message_log")) {
      state.message_log.push_back(message_from_json(item));
    }
    for (const auto& item : payload.at("action_log")) {
      state.action_log.push_back(action_from_json(item));
    }
    for (const auto& [id, recruiter] : payload.at("lineage").items()) {
      state.lineage[std::stoll(id)] = recruiter.get<AgentId>();
    }
    std::istringstream rng_text(payload.at("rng").get<std::string>());
    rng_text >> state.rng;
    if (!rng_text) throw ParseError("corrupt snapshot rng state");
    return state;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("corrupt snapshot payload: ") + e.what());
  }
}

void write_snapshot(const SimulationState& state, const std::filesystem::path& path) {
  const auto bytes = snapshot_state(state);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open snapshot for writing: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

SimulationState read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open snapshot: " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return restore_state(bytes);
}

}  // namespace asymsim
