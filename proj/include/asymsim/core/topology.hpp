#pragma once

#include <map>
#include <utility>
#include <vector>

#include "asymsim/core/types.hpp"

namespace asymsim {

// Undirected edges over the initial five agents, each pair normalized as
// (low id, high id). Wheel: agent 2 is the hub; circle: the 1-2-3-4-5-1 ring.
std::vector<std::pair<AgentId, AgentId>> topology_edges(Topology topology);

// Initial subjective views for agents 1..5: adjacent pairs get the chosen
// polarity on both sides, every other pair is mutually "general". Agents
// never hold an entry for themselves.
std::map<AgentId, RelationshipView> init_relationships(Topology topology,
                                                       Polarity polarity);

}  // namespace asymsim
