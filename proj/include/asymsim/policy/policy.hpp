#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <string_view>

#include "asymsim/attention/attention.hpp"
#include "asymsim/core/config.hpp"
#include "asymsim/core/types.hpp"

namespace asymsim {

// Everything an agent sees when deciding: its own profile, the weighted
// current-round messages (descending weight), its subjective view, the
// visible roster, and a private random stream derived from
// (run seed, agent id, round) so results do not depend on scheduling.
struct DecisionRequest {
  const AgentProfile& self_profile;
  std::vector<WeightedMessage> attention;
  const RelationshipView& relationships;
  const std::map<AgentId, AgentProfile>& roster_profiles;
  int round;
  std::mt19937_64 rng_stream;
};

struct Decision {
  Action action;
  std::string note;  // failure reason or raw transport payload, empty if none
};

// A policy must be total: every request yields a well-formed action or a
// no-op, and nothing may escape decide() as an exception. Implementations
// must be safe for concurrent invocation.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string_view name() const = 0;
  virtual Decision decide(DecisionRequest& request) const = 0;
};

// Deterministic per-(seed, agent, round) generator, independent of call order.
std::mt19937_64 agent_round_stream(std::uint64_t run_seed, AgentId agent, int round);

// Builds a policy from its spec. The llm policy reads transport settings from
// spec parameters and environment variables; see make_llm_policy for
// injecting a transport directly. Throws ConfigError on unknown names or bad
// parameters.
std::unique_ptr<Policy> make_policy(const PolicySpec& spec);

std::unique_ptr<Policy> make_silent_policy();
std::unique_ptr<Policy> make_relay_top_policy();
std::unique_ptr<Policy> make_epidemic_policy(double activation_probability);
std::unique_ptr<Policy> make_forced_recruit_policy();

}  // namespace asymsim
