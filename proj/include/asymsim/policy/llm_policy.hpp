#pragma once

#include <memory>
#include <string>

#include "asymsim/policy/policy.hpp"

namespace asymsim {

struct ChatRequest {
  std::string model;
  std::string system_prompt;
  std::string user_prompt;
  double temperature = 0.7;
};

struct ChatResult {
  bool ok = false;
  std::string content;  // assistant text when ok
  std::string error;    // transport or protocol failure when not ok
};

// Completion backend. Implementations must be safe for concurrent calls and
// must report failures through ChatResult instead of throwing.
class ChatTransport {
 public:
  virtual ~ChatTransport() = default;
  virtual ChatResult complete(const ChatRequest& request) = 0;
};

struct LlmOptions {
  std::string model = "gpt-4o-mini";
  double temperature = 0.7;
};

// Model-backed decisions: renders the decision prompt, asks the transport,
// and parses the structured reply. Every failure degrades to a no-op whose
// note carries the reason (and the raw reply when parsing failed), so a run
// always completes.
std::unique_ptr<Policy> make_llm_policy(LlmOptions options,
                                        std::shared_ptr<ChatTransport> transport);

// Builds the HTTP transport from spec parameters (model, base_url, path,
// temperature, timeout_seconds, max_concurrency) and the environment
// (ASYMSIM_API_KEY / OPENAI_API_KEY, ASYMSIM_LLM_BASE_URL, ASYMSIM_LLM_MODEL).
// Throws ConfigError when no credential is configured for a remote endpoint.
std::unique_ptr<Policy> make_llm_policy_from_spec(const PolicySpec& spec);

}  // namespace asymsim
