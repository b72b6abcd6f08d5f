#include "asymsim/policy/http_chat.hpp"

#include <fstream>
#include <utility>

#include "httplib.h"
#include "json.hpp"

namespace asymsim {

namespace {

struct SlotGuard {
  std::mutex& mutex;
  std::condition_variable& cv;
  int& in_flight;
  int cap;

  SlotGuard(std::mutex& m, std::condition_variable& c, int& n, int cap)
      : mutex(m), cv(c), in_flight(n), cap(cap) {
    std::unique_lock lock(mutex);
    cv.wait(lock, [&] { return in_flight < cap; });
    ++in_flight;
  }
  ~SlotGuard() {
    {
      std::lock_guard lock(mutex);
      --in_flight;
    }
    cv.notify_one();
  }
};

std::string truncate(const std::string& s, std::size_t limit) {
  if (s.size() <= limit) return s;
  return s.substr(0, limit) + "...";
}

}  // namespace

HttpChatTransport::HttpChatTransport(HttpChatOptions options)
    : options_(std::move(options)) {
  if (options_.max_concurrency < 1) options_.max_concurrency = 1;
}

ChatResult HttpChatTransport::complete(const ChatRequest& request) {
  SlotGuard slot(mutex_, slot_available_, in_flight_, options_.max_concurrency);

  nlohmann::json body = {
      {"model", request.model},
      {"messages",
       {{{"role", "system"}, {"content", request.system_prompt}},
        {{"role", "user"}, {"content", request.user_prompt}}}},
      {"temperature", request.temperature},
  };

  auto wire_log = [&](const char* direction, const std::string& payload) {
    if (options_.wire_log_path.empty()) return;
    std::ofstream out(options_.wire_log_path, std::ios::app);
    out << direction << ' ' << payload << '\n';
  };
  wire_log(">>", body.dump());

  try {
    httplib::Client client(options_.base_url);
    client.set_connection_timeout(options_.timeout_seconds, 0);
    client.set_read_timeout(options_.timeout_seconds, 0);
    client.set_write_timeout(options_.timeout_seconds, 0);
    httplib::Headers headers;
    if (!options_.api_key.empty()) {
      headers.emplace("Authorization", "Bearer " + options_.api_key);
    }
    auto res = client.Post(options_.path, headers, body.dump(), "application/json");
    if (!res) {
      wire_log("!!", httplib::to_string(res.error()));
      return {false, "", "transport failure: " + httplib::to_string(res.error())};
    }
    wire_log("<<", res->body);
    if (res->status != 200) {
      return {false, "",
              "http " + std::to_string(res->status) + ": " + truncate(res->body, 500)};
    }
    const nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
    if (reply.is_discarded() || !reply.contains("choices") ||
        !reply.at("choices").is_array() || reply.at("choices").empty()) {
      return {false, "", "malformed completion response: " + truncate(res->body, 500)};
    }
    const auto& message = reply.at("choices").at(0).at("message");
    if (!message.contains("content") || !message.at("content").is_string()) {
      return {false, "", "completion response missing message content"};
    }
    return {true, message.at("content").get<std::string>(), ""};
  } catch (const std::exception& e) {
    return {false, "", std::string("transport exception: ") + e.what()};
  }
}

}  // namespace asymsim
