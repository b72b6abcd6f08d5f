#include "asymsim/policy/llm_policy.hpp"

#include <cstdlib>
#include <utility>

#include "asymsim/core/errors.hpp"
#include "asymsim/policy/http_chat.hpp"
#include "asymsim/policy/prompt.hpp"

namespace asymsim {

namespace {

constexpr std::size_t kRawReplyLimit = 2000;

std::string truncate(const std::string& s, std::size_t limit) {
  if (s.size() <= limit) return s;
  return s.substr(0, limit) + "...";
}

class LlmPolicy final : public Policy {
 public:
  LlmPolicy(LlmOptions options, std::shared_ptr<ChatTransport> transport)
      : options_(std::move(options)), transport_(std::move(transport)) {}

  std::string_view name() const override { return "llm"; }

  Decision decide(DecisionRequest& request) const override {
    try {
      ChatRequest chat;
      chat.model = options_.model;
      chat.temperature = options_.temperature;
      chat.system_prompt = decision_system_prompt();
      chat.user_prompt = render_decision_prompt(request);

      const ChatResult result = transport_->complete(chat);
      if (!result.ok) {
        return {Action{}, "transport: " + result.error};
      }
      std::string parse_error;
      auto action = parse_action_reply(result.content, parse_error);
      if (!action) {
        return {Action{},
                "parse: " + parse_error + "; raw: " + truncate(result.content, kRawReplyLimit)};
      }
      return {std::move(*action), ""};
    } catch (const std::exception& e) {
      return {Action{}, std::string("llm policy error: ") + e.what()};
    }
  }

 private:
  LlmOptions options_;
  std::shared_ptr<ChatTransport> transport_;
};

std::string env_or(const char* name, const std::string& fallback) {
  const char* value = std::getenv(name);
  return value && *value ? std::string(value) : fallback;
}

}  // namespace

std::unique_ptr<Policy> make_llm_policy(LlmOptions options,
                                        std::shared_ptr<ChatTransport> transport) {
  return std::make_unique<LlmPolicy>(std::move(options), std::move(transport));
}

std::unique_ptr<Policy> make_llm_policy_from_spec(const PolicySpec& spec) {
  const auto& params = spec.parameters;
  auto param_string = [&](const char* key, const std::string& fallback) {
    if (!params.contains(key)) return fallback;
    if (!params.at(key).is_string())
      throw ConfigError(std::string("llm parameter must be a string: ") + key);
    return params.at(key).get<std::string>();
  };

  HttpChatOptions http;
  http.base_url =
      param_string("base_url", env_or("ASYMSIM_LLM_BASE_URL", "https://api.openai.com"));
  http.path = param_string("path", "/v1/chat/completions");
  http.api_key = env_or("ASYMSIM_API_KEY", env_or("OPENAI_API_KEY", ""));
  if (params.contains("timeout_seconds"))
    http.timeout_seconds = params.at("timeout_seconds").get<int>();
  if (params.contains("max_concurrency"))
    http.max_concurrency = params.at("max_concurrency").get<int>();
  http.wire_log_path = param_string("wire_log", env_or("ASYMSIM_LLM_WIRE_LOG", ""));

  // A remote default endpoint without a credential is a configuration error;
  // a locally overridden base_url may run keyless.
  const bool endpoint_overridden =
      params.contains("base_url") || std::getenv("ASYMSIM_LLM_BASE_URL");
  if (http.api_key.empty() && !endpoint_overridden) {
    throw ConfigError(
        "llm policy needs credentials: set ASYMSIM_API_KEY (or OPENAI_API_KEY), "
        "or point ASYMSIM_LLM_BASE_URL / policy parameter base_url at a local "
        "endpoint");
  }

  LlmOptions options;
  options.model = param_string("model", env_or("ASYMSIM_LLM_MODEL", "gpt-4o-mini"));
  if (params.contains("temperature")) {
    if (!params.at("temperature").is_number())
      throw ConfigError("llm parameter temperature must be a number");
    options.temperature = params.at("temperature").get<double>();
  }

  return make_llm_policy(std::move(options),
                         std::make_shared<HttpChatTransport>(std::move(http)));
}

}  // namespace asymsim
