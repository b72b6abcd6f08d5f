#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "asymsim/core/defaults.hpp"
#include "asymsim/core/errors.hpp"
#include "asymsim/engine/simulation.hpp"
#include "asymsim/policy/http_chat.hpp"
#include "asymsim/policy/llm_policy.hpp"
#include "asymsim/policy/prompt.hpp"

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"

using namespace asymsim;

namespace {

class ScriptedTransport final : public ChatTransport {
 public:
  explicit ScriptedTransport(ChatResult result) : result_(std::move(result)) {}
  ChatResult complete(const ChatRequest& request) override {
    last_request = request;
    ++calls;
    return result_;
  }
  ChatRequest last_request;
  int calls = 0;

 private:
  ChatResult result_;
};

DecisionRequest sample_request(std::map<AgentId, AgentProfile>& roster,
                               RelationshipView& relationships) {
  for (const auto& profile : default_profiles()) roster[profile.id] = profile;
  relationships.owner = 2;
  relationships.entries = {{1, RelationshipKind::positive},
                           {3, RelationshipKind::general}};
  return DecisionRequest{roster.at(2),
                         {{1, 3, "quarterly numbers look strong"},
                          {kEnvSender, 0, "city council meets tomorrow"}},
                         relationships,
                         roster,
                         4,
                         agent_round_stream(1, 2, 4)};
}

}  // namespace

TEST_SUITE("llm") {

TEST_CASE("prompt carries profile, weights, relationships, roster, schema") {
  std::map<AgentId, AgentProfile> roster;
  RelationshipView relationships;
  auto request = sample_request(roster, relationships);
  const std::string prompt = render_decision_prompt(request);

  CHECK(prompt.find("Round: 4") != std::string::npos);
  CHECK(prompt.find("You are agent 2") != std::string::npos);
  CHECK(prompt.find("philosopher") != std::string::npos);
  CHECK(prompt.find("agent 1: positive") != std::string::npos);
  CHECK(prompt.find("[agent 1] (3) [quarterly numbers look strong]") !=
        std::string::npos);
  CHECK(prompt.find("[ENV] (0) [city council meets tomorrow]") != std::string::npos);
  CHECK(prompt.find("agent 5") != std::string::npos);  // roster listing
  CHECK(prompt.find("\"send\"") != std::string::npos);
  CHECK(prompt.find("\"new\"") != std::string::npos);
}

TEST_CASE("parse_action_reply handles the valid shapes") {
  std::string error;
  auto full = parse_action_reply(
      R"({"send": {"to": 3, "content": "hello"},
          "relationship_changes": [{"target": 1, "kind": "negative"}],
          "new_agent": {"age": 33, "gender": "man", "innate": ["calm"],
                        "occupation": "officer", "relationship": "positive"}})",
      error);
  REQUIRE(full.has_value());
  CHECK(full->send->receiver == 3);
  CHECK(full->send->content == "hello");
  CHECK(full->relationship_changes[0].kind == RelationshipKind::negative);
  CHECK(full->recruit->profile.occupation == "officer");

  auto fenced = parse_action_reply("```json\n{\"send\": {\"to\": \"new\", "
                                   "\"content\": \"hi\"}}\n```",
                                   error);
  REQUIRE(fenced.has_value());
  CHECK(fenced->send->receiver == kNewRecruit);

  auto noop = parse_action_reply("{}", error);
  REQUIRE(noop.has_value());
  CHECK(noop->is_noop());
}

TEST_CASE("parse_action_reply rejects prose and bad shapes") {
  std::string error;
  CHECK(!parse_action_reply("I think I will message agent 3.", error).has_value());
  CHECK(!error.empty());
  CHECK(!parse_action_reply(R"(["not", "an", "object"])", error).has_value());
  CHECK(!parse_action_reply(R"({"send": {"to": 3}})", error).has_value());
  CHECK(!parse_action_reply(R"({"send": {"to": "agent three", "content": "x"}})", error)
             .has_value());
  CHECK(!parse_action_reply(R"({"relationship_changes": [{"target": 1, "kind": "frenemy"}]})",
                            error)
             .has_value());
  CHECK(
      !parse_action_reply(R"({"new_agent": {"age": "old", "gender": "m", "innate": [],
                              "occupation": "x", "relationship": "positive"}})",
                          error)
          .has_value());
}

TEST_CASE("llm policy: parse path, failure paths, never throws") {
  std::map<AgentId, AgentProfile> roster;
  RelationshipView relationships;

  auto valid = std::make_shared<ScriptedTransport>(
      ChatResult{true, R"({"send": {"to": 1, "content": "passing it along"}})", ""});
  auto policy = make_llm_policy({}, valid);
  auto request = sample_request(roster, relationships);
  const Decision good = policy->decide(request);
  REQUIRE(good.action.send.has_value());
  CHECK(good.action.send->receiver == 1);
  CHECK(good.note.empty());
  CHECK(valid->last_request.user_prompt.find("[agent 1]") != std::string::npos);

  auto prose = std::make_shared<ScriptedTransport>(
      ChatResult{true, "Sure! I'll send agent 1 a note.", ""});
  auto prose_policy = make_llm_policy({}, prose);
  auto request2 = sample_request(roster, relationships);
  const Decision bad = prose_policy->decide(request2);
  CHECK(bad.action.is_noop());
  CHECK(bad.note.find("parse:") != std::string::npos);
  CHECK(bad.note.find("Sure!") != std::string::npos);  // raw reply logged

  auto timeout = std::make_shared<ScriptedTransport>(
      ChatResult{false, "", "timeout after 30s"});
  auto timeout_policy = make_llm_policy({}, timeout);
  auto request3 = sample_request(roster, relationships);
  const Decision failed = timeout_policy->decide(request3);
  CHECK(failed.action.is_noop());
  CHECK(failed.note.find("transport: timeout after 30s") != std::string::npos);
}

TEST_CASE("llm run completes against a mocked transport") {
  ScenarioConfig config = default_config(ContentKind::SH, DistributionMechanism::BC,
                                         Topology::wheel, Polarity::positive);
  config.rounds = 3;
  config.policy.name = "llm";
  auto transport = std::make_shared<ScriptedTransport>(
      ChatResult{true, R"({"send": {"to": 2, "content": "sharing the update"}})", ""});
  auto policy = std::shared_ptr<const Policy>(make_llm_policy({}, transport));

  const RunLog log = run(config, policy);
  CHECK(log.final_summary.roster_size == 5);
  CHECK(transport->calls == 15);
  std::size_t sends = 0;
  std::size_t rejections = 0;
  for (const auto& event : log.events) {
    if (std::holds_alternative<MessageEvent>(event)) ++sends;
    if (std::holds_alternative<RejectionEvent>(event)) ++rejections;
  }
  CHECK(sends == 12);       // agent 2's send-to-self is rejected each round
  CHECK(rejections == 3);
  CHECK(replay_summary(log.config, log.events) == log.final_summary);
}

TEST_CASE("http transport round-trips against a local server") {
  httplib::Server server;
  std::string seen_auth;
  std::string seen_model;
  server.Post("/v1/chat/completions", [&](const httplib::Request& req,
                                          httplib::Response& res) {
    seen_auth = req.get_header_value("Authorization");
    const auto body = nlohmann::json::parse(req.body);
    seen_model = body.at("model").get<std::string>();
    nlohmann::json reply = {
        {"choices",
         {{{"message", {{"role", "assistant"}, {"content", "{\"send\": null}"}}}}}}};
    res.set_content(reply.dump(), "application/json");
  });
  int port = 0;
  std::thread server_thread([&] {
    port = server.bind_to_any_port("127.0.0.1");
    server.listen_after_bind();
  });
  while (port == 0) std::this_thread::sleep_for(std::chrono::milliseconds(5));
  server.wait_until_ready();

  HttpChatOptions options;
  options.base_url = "http://127.0.0.1:" + std::to_string(port);
  options.api_key = "testkey";
  HttpChatTransport transport(options);
  ChatRequest request;
  request.model = "test-model";
  request.system_prompt = "sys";
  request.user_prompt = "user";
  const ChatResult result = transport.complete(request);
  CHECK(result.ok);
  CHECK(result.content == "{\"send\": null}");
  CHECK(seen_auth == "Bearer testkey");
  CHECK(seen_model == "test-model");

  server.stop();
  server_thread.join();
}

TEST_CASE("http transport reports server errors and dead endpoints") {
  httplib::Server server;
  server.Post("/v1/chat/completions",
              [&](const httplib::Request&, httplib::Response& res) {
                res.status = 500;
                res.set_content("exploded", "text/plain");
              });
  int port = 0;
  std::thread server_thread([&] {
    port = server.bind_to_any_port("127.0.0.1");
    server.listen_after_bind();
  });
  while (port == 0) std::this_thread::sleep_for(std::chrono::milliseconds(5));
  server.wait_until_ready();

  HttpChatOptions options;
  options.base_url = "http://127.0.0.1:" + std::to_string(port);
  HttpChatTransport transport(options);
  const ChatResult error = transport.complete({});
  CHECK(!error.ok);
  CHECK(error.error.find("http 500") != std::string::npos);
  server.stop();
  server_thread.join();

  HttpChatOptions dead;
  dead.base_url = "http://127.0.0.1:1";  // nothing listens there
  dead.timeout_seconds = 2;
  HttpChatTransport dead_transport(dead);
  const ChatResult no_conn = dead_transport.complete({});
  CHECK(!no_conn.ok);
  CHECK(!no_conn.error.empty());
}

TEST_CASE("wire log captures bodies but never the credential") {
  httplib::Server server;
  server.Post("/v1/chat/completions",
              [&](const httplib::Request&, httplib::Response& res) {
                nlohmann::json reply = {
                    {"choices",
                     {{{"message", {{"role", "assistant"}, {"content", "{}"}}}}}}};
                res.set_content(reply.dump(), "application/json");
              });
  int port = 0;
  std::thread server_thread([&] {
    port = server.bind_to_any_port("127.0.0.1");
    server.listen_after_bind();
  });
  while (port == 0) std::this_thread::sleep_for(std::chrono::milliseconds(5));
  server.wait_until_ready();

  const auto log_path =
      std::filesystem::temp_directory_path() / "asymsim_wire_log.txt";
  std::filesystem::remove(log_path);

  HttpChatOptions options;
  options.base_url = "http://127.0.0.1:" + std::to_string(port);
  options.api_key = "super-secret-key";
  options.wire_log_path = log_path.string();
  HttpChatTransport transport(options);
  ChatRequest request;
  request.model = "m";
  request.user_prompt = "the user prompt body";
  CHECK(transport.complete(request).ok);
  server.stop();
  server_thread.join();

  std::ifstream in(log_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string wire = buffer.str();
  CHECK(wire.find("the user prompt body") != std::string::npos);
  CHECK(wire.find("assistant") != std::string::npos);
  CHECK(wire.find("super-secret-key") == std::string::npos);
  std::filesystem::remove(log_path);
}

TEST_CASE("make_llm_policy_from_spec needs credentials for remote endpoints") {
  unsetenv("ASYMSIM_API_KEY");
  unsetenv("OPENAI_API_KEY");
  unsetenv("ASYMSIM_LLM_BASE_URL");
  PolicySpec spec;
  spec.name = "llm";
  CHECK_THROWS_AS(make_llm_policy_from_spec(spec), ConfigError);

  spec.parameters = {{"base_url", "http://127.0.0.1:9999"}, {"model", "local"}};
  CHECK(make_llm_policy_from_spec(spec)->name() == "llm");
}

}  // TEST_SUITE
