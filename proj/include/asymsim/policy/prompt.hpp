#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "asymsim/core/types.hpp"
#include "asymsim/policy/policy.hpp"

namespace asymsim {

std::string decision_system_prompt();

// User-facing prompt: round, own profile, subjective relationships, visible
// roster, the weighted message list in "[sender] (weight) [content]" form,
// and the JSON action schema.
std::string render_decision_prompt(const DecisionRequest& request);

// Parses a model reply into an action skeleton (actor/round are filled by the
// engine). Strips surrounding code fences; anything else malformed fails with
// `error` set and no action. A send "to": "new" maps to kNewRecruit.
std::optional<Action> parse_action_reply(std::string_view reply, std::string& error);

}  // namespace asymsim
