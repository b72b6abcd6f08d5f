#pragma once

#include <condition_variable>
#include <mutex>
#include <string>

#include "asymsim/policy/llm_policy.hpp"

namespace asymsim {

struct HttpChatOptions {
  std::string base_url;  // scheme://host[:port]
  std::string path = "/v1/chat/completions";
  std::string api_key;   // sent as a bearer token when non-empty
  int timeout_seconds = 30;
  int max_concurrency = 4;
  // Append request/response bodies to this file when set. Credentials travel
  // only in headers, which are never written.
  std::string wire_log_path;
};

// Chat-completions client. Issues one POST per request, bounded by
// max_concurrency across threads; failures come back in ChatResult and the
// API key never appears in any reported text.
class HttpChatTransport final : public ChatTransport {
 public:
  explicit HttpChatTransport(HttpChatOptions options);
  ChatResult complete(const ChatRequest& request) override;

 private:
  HttpChatOptions options_;
  std::mutex mutex_;
  std::condition_variable slot_available_;
  int in_flight_ = 0;
};

}  // namespace asymsim
