#include "asymsim/policy/policy.hpp"

#include <algorithm>

#include "asymsim/core/errors.hpp"
#include "asymsim/policy/llm_policy.hpp"

namespace asymsim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class SilentPolicy final : public Policy {
 public:
  std::string_view name() const override { return "silent"; }
  Decision decide(DecisionRequest&) const override { return {}; }
};

// Forwards the top-attention content to the lowest-id positively related
// agent that is not the content's original sender.
class RelayTopPolicy final : public Policy {
 public:
  std::string_view name() const override { return "relay_top"; }

  Decision decide(DecisionRequest& request) const override {
    if (request.attention.empty()) return {};
    const WeightedMessage& top = request.attention.front();
    for (const auto& [other, kind] : request.relationships.entries) {
      if (kind != RelationshipKind::positive) continue;
      if (other == top.sender) continue;
      Decision decision;
      decision.action.send = SendPart{other, top.content};
      return decision;
    }
    return {};
  }
};

// Fires with probability p per round; when it fires, forwards the
// top-attention content to a uniformly drawn agent from the actor's view.
class EpidemicPolicy final : public Policy {
 public:
  explicit EpidemicPolicy(double p) : p_(p) {}
  std::string_view name() const override { return "epidemic"; }

  Decision decide(DecisionRequest& request) const override {
    std::bernoulli_distribution fire(p_);
    if (!fire(request.rng_stream)) return {};
    if (request.attention.empty()) return {};
    std::vector<AgentId> known;
    known.reserve(request.relationships.entries.size());
    for (const auto& [other, kind] : request.relationships.entries) {
      if (other != request.self_profile.id) known.push_back(other);
    }
    if (known.empty()) return {};
    std::uniform_int_distribution<std::size_t> pick(0, known.size() - 1);
    Decision decision;
    decision.action.send =
        SendPart{known[pick(request.rng_stream)], request.attention.front().content};
    return decision;
  }

 private:
  double p_;
};

// Recruits one templated agent every round and forwards the top-attention
// content to it (a fixed probe string when nothing was received).
class ForcedRecruitPolicy final : public Policy {
 public:
  std::string_view name() const override { return "forced_recruit"; }

  Decision decide(DecisionRequest& request) const override {
    Decision decision;
    AgentProfile profile;
    profile.age = 30;
    profile.gender = "unspecified";
    profile.innate = {"recruited"};
    profile.occupation = "recruit-of-" + std::to_string(request.self_profile.id) +
                         "-r" + std::to_string(request.round);
    decision.action.recruit = RecruitPart{profile, RelationshipKind::positive};
    const std::string content = request.attention.empty()
                                    ? std::string("forced diffusion probe")
                                    : request.attention.front().content;
    decision.action.send = SendPart{kNewRecruit, content};
    return decision;
  }
};

}  // namespace

std::mt19937_64 agent_round_stream(std::uint64_t run_seed, AgentId agent, int round) {
  std::uint64_t h = run_seed;
  h = splitmix64(h ^ static_cast<std::uint64_t>(agent));
  h = splitmix64(h ^ static_cast<std::uint64_t>(round));
  return std::mt19937_64(h);
}

std::unique_ptr<Policy> make_silent_policy() { return std::make_unique<SilentPolicy>(); }

std::unique_ptr<Policy> make_relay_top_policy() {
  return std::make_unique<RelayTopPolicy>();
}

std::unique_ptr<Policy> make_epidemic_policy(double activation_probability) {
  if (activation_probability < 0.0 || activation_probability > 1.0) {
    throw ConfigError("epidemic activation probability must be in [0,1]");
  }
  return std::make_unique<EpidemicPolicy>(activation_probability);
}

std::unique_ptr<Policy> make_forced_recruit_policy() {
  return std::make_unique<ForcedRecruitPolicy>();
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec) {
  if (spec.name == "silent") return make_silent_policy();
  if (spec.name == "relay_top") return make_relay_top_policy();
  if (spec.name == "epidemic") {
    double p = 0.1;
    if (spec.parameters.contains("p")) {
      if (!spec.parameters.at("p").is_number()) {
        throw ConfigError("epidemic parameter p must be a number");
      }
      p = spec.parameters.at("p").get<double>();
    }
    return make_epidemic_policy(p);
  }
  if (spec.name == "forced_recruit") return make_forced_recruit_policy();
  if (spec.name == "llm") return make_llm_policy_from_spec(spec);
  throw ConfigError("unknown policy name: " + spec.name);
}

}  // namespace asymsim
