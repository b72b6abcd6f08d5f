#include "asymsim/engine/run_log.hpp"

#include "asymsim/core/topology.hpp"

namespace asymsim {

StateSummary replay_summary(const ScenarioConfig& config,
                            const std::vector<Event>& events) {
  StateSummary summary;
  summary.views = init_relationships(config.topology, config.initial_polarity);
  std::size_t roster_size = kInitialAgentCount;
  for (const auto& event : events) {
    if (const auto* recruit = std::get_if<RecruitEvent>(&event)) {
      ++roster_size;
      const AgentId id = recruit->profile.id;
      summary.views[recruit->recruiter].entries[id] = recruit->relationship;
      RelationshipView view;
      view.owner = id;
      view.entries[recruit->recruiter] = recruit->relationship;
      summary.views[id] = std::move(view);
    } else if (const auto* change = std::get_if<RelationshipChangeEvent>(&event)) {
      summary.views[change->actor].entries[change->target] = change->new_kind;
    }
  }
  summary.roster_size = roster_size;
  return summary;
}

}  // namespace asymsim
