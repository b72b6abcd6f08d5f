#include "asymsim/core/topology.hpp"

namespace asymsim {

std::vector<std::pair<AgentId, AgentId>> topology_edges(Topology topology) {
  if (topology == Topology::wheel) {
    return {{1, 2}, {2, 3}, {2, 4}, {2, 5}};
  }
  return {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}};
}

std::map<AgentId, RelationshipView> init_relationships(Topology topology,
                                                       Polarity polarity) {
  const RelationshipKind edge_kind = polarity == Polarity::positive
                                         ? RelationshipKind::positive
                                         : RelationshipKind::negative;
  std::map<AgentId, RelationshipView> views;
  for (AgentId a = 1; a <= kInitialAgentCount; ++a) {
    RelationshipView view;
    view.owner = a;
    for (AgentId b = 1; b <= kInitialAgentCount; ++b) {
      if (b == a) continue;
      view.entries[b] = RelationshipKind::general;
    }
    views[a] = std::move(view);
  }
  for (auto [a, b] : topology_edges(topology)) {
    views[a].entries[b] = edge_kind;
    views[b].entries[a] = edge_kind;
  }
  return views;
}

}  // namespace asymsim
