#pragma once

#include <vector>

#include "asymsim/core/config.hpp"
#include "asymsim/core/types.hpp"

namespace asymsim {

// The fixed five-agent roster every simulation starts from.
const std::vector<AgentProfile>& default_profiles();

// Bundled ~50-word information text for each content kind.
const InfoContent& default_content(ContentKind kind);

// A ready-to-run config for one environment cell; content text, caps and
// threshold take their bundled defaults.
ScenarioConfig default_config(ContentKind content, DistributionMechanism mechanism,
                              Topology topology, Polarity polarity);

// All 48 bundled setups: 4 contents x 3 mechanisms x 2 topologies x
// 2 polarities (the 12 content-mechanism environments, each under the four
// initial settings).
std::vector<ScenarioConfig> bundled_scenarios();

}  // namespace asymsim
