#include "asymsim/metrics/metrics.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "asymsim/core/errors.hpp"
#include "asymsim/core/topology.hpp"

namespace asymsim {

namespace {

struct ScannedLog {
  std::vector<Message> seeds;
  std::vector<Message> sends;                 // agent-sent, log order
  std::vector<const RecruitEvent*> recruits;  // log order
  std::size_t final_roster = kInitialAgentCount;
};

ScannedLog scan(const RunLog& log) {
  ScannedLog scanned;
  for (const auto& event : log.events) {
    if (const auto* seed = std::get_if<SeedEvent>(&event)) {
      scanned.seeds.push_back(seed->message);
    } else if (const auto* msg = std::get_if<MessageEvent>(&event)) {
      scanned.sends.push_back(msg->message);
    } else if (const auto* recruit = std::get_if<RecruitEvent>(&event)) {
      scanned.recruits.push_back(recruit);
    }
  }
  scanned.final_roster = kInitialAgentCount + scanned.recruits.size();
  return scanned;
}

// Memoizes sim(content, seed text): runs compare the same few strings
// thousands of times.
class SeedSimilarity {
 public:
  SeedSimilarity(const SimilarityProvider& provider, std::string seed_text)
      : provider_(provider), seed_text_(std::move(seed_text)) {}

  double operator()(const std::string& content) {
    auto it = cache_.find(content);
    if (it != cache_.end()) return it->second;
    const double value = provider_.similarity(content, seed_text_);
    cache_.emplace(content, value);
    return value;
  }

 private:
  const SimilarityProvider& provider_;
  std::string seed_text_;
  std::unordered_map<std::string, double> cache_;
};

std::optional<double> bias_metric(const ScannedLog& scanned,
                                  const SimilarityProvider& provider,
                                  bool all_pairs) {
  std::map<AgentId, std::vector<const Message*>> by_sender;
  for (const auto& msg : scanned.sends) by_sender[msg.sender].push_back(&msg);

  double total = 0.0;
  std::size_t qualifying = 0;
  for (auto& [sender, messages] : by_sender) {
    if (messages.size() < 2) continue;
    std::stable_sort(messages.begin(), messages.end(),
                     [](const Message* a, const Message* b) { return a->round < b->round; });
    double sum = 0.0;
    std::size_t pairs = 0;
    if (all_pairs) {
      for (std::size_t i = 0; i < messages.size(); ++i) {
        for (std::size_t j = i + 1; j < messages.size(); ++j) {
          sum += provider.similarity(messages[i]->content, messages[j]->content);
          ++pairs;
        }
      }
    } else {
      for (std::size_t i = 1; i < messages.size(); ++i) {
        sum += provider.similarity(messages[i - 1]->content, messages[i]->content);
        ++pairs;
      }
    }
    total += sum / static_cast<double>(pairs);
    ++qualifying;
  }
  if (qualifying == 0) return std::nullopt;
  return total / static_cast<double>(qualifying);
}

// Directed view entries whose final kind differs from the owner's baseline
// view (its creation-time view: the configured initial views for agents 1..5,
// the spawn entry for recruits), plus one per agent added.
double rpf_metric(const RunLog& log, const ScannedLog& scanned) {
  std::map<AgentId, std::map<AgentId, RelationshipKind>> baseline;
  for (const auto& [id, view] :
       init_relationships(log.config.topology, log.config.initial_polarity)) {
    baseline[id] = view.entries;
  }
  for (const auto* recruit : scanned.recruits) {
    baseline[recruit->profile.id] = {{recruit->recruiter, recruit->relationship}};
  }

  const StateSummary final_summary = replay_summary(log.config, log.events);
  double changes = 0.0;
  for (const auto& [owner, view] : final_summary.views) {
    const auto& base = baseline[owner];
    for (const auto& [target, kind] : view.entries) {
      auto it = base.find(target);
      if (it == base.end() || it->second != kind) changes += 1.0;
    }
  }
  return changes + static_cast<double>(scanned.recruits.size());
}

}  // namespace

MetricsReport compute_metrics(const RunLog& log, const SimilarityProvider& provider,
                              const MetricsOptions& options) {
  const ScannedLog scanned = scan(log);
  const double threshold = options.threshold.value_or(log.config.similarity_threshold);
  SeedSimilarity seed_sim(provider, log.config.content.text);

  MetricsReport report;
  report.action_similarity_bias = bias_metric(scanned, provider, options.all_pairs_bias);
  report.relationship_perception_frequency = rpf_metric(log, scanned);

  const double roster = static_cast<double>(scanned.final_roster);

  // Awareness: any received message counts, environment seeds included.
  std::set<AgentId> aware;
  std::size_t aware_messages = 0;
  auto note_received = [&](const Message& msg) {
    if (seed_sim(msg.content) >= threshold) {
      aware.insert(msg.receiver);
      ++aware_messages;
    }
  };
  for (const auto& msg : scanned.seeds) note_received(msg);
  for (const auto& msg : scanned.sends) note_received(msg);
  const double info_numerator =
      options.message_summed_numerators ? static_cast<double>(aware_messages)
                                        : static_cast<double>(aware.size());
  report.information_gap = roster > 0 ? info_numerator / roster * 100.0 : 0.0;

  // Transmission: only agent-sent messages count.
  std::set<AgentId> spreading;
  std::size_t spreading_messages = 0;
  std::set<int> rounds_with_similar_send;
  for (const auto& msg : scanned.sends) {
    if (seed_sim(msg.content) >= threshold) {
      spreading.insert(msg.sender);
      ++spreading_messages;
      rounds_with_similar_send.insert(msg.round);
    }
  }
  const double diffusion_numerator =
      options.message_summed_numerators ? static_cast<double>(spreading_messages)
                                        : static_cast<double>(spreading.size());
  report.diffusion_gap = roster > 0 ? diffusion_numerator / roster * 100.0 : 0.0;
  report.diffusion_conversion_gap = report.information_gap - report.diffusion_gap;

  int retention = 0;
  for (int round = 1; round <= log.config.rounds; ++round) {
    if (rounds_with_similar_send.contains(round)) ++retention;
  }
  report.information_retention = retention;

  report.avg_agent_increase_per_round =
      log.config.rounds > 0
          ? static_cast<double>(scanned.final_roster - kInitialAgentCount) /
                static_cast<double>(log.config.rounds)
          : 0.0;

  // First message each recruit ever received: minimal round, then log order.
  std::map<AgentId, const Message*> first_received;
  std::set<AgentId> recruit_ids;
  for (const auto* recruit : scanned.recruits) recruit_ids.insert(recruit->profile.id);
  for (const auto& event : log.events) {
    const Message* msg = nullptr;
    if (const auto* seed = std::get_if<SeedEvent>(&event)) {
      msg = &seed->message;
    } else if (const auto* sent = std::get_if<MessageEvent>(&event)) {
      msg = &sent->message;
    }
    if (!msg || !recruit_ids.contains(msg->receiver)) continue;
    auto it = first_received.find(msg->receiver);
    if (it == first_received.end() || msg->round < it->second->round) {
      first_received[msg->receiver] = msg;
    }
  }
  if (!first_received.empty()) {
    double sum = 0.0;
    for (const auto& [id, msg] : first_received) sum += seed_sim(msg->content);
    report.new_agent_seed_similarity = sum / static_cast<double>(first_received.size());
  }

  return report;
}

MetricsReport aggregate(const std::vector<MetricsReport>& reports) {
  if (reports.empty()) throw ConfigError("cannot aggregate an empty report list");

  MetricsReport mean;
  auto average = [&](auto getter) {
    double sum = 0.0;
    for (const auto& r : reports) sum += getter(r);
    return sum / static_cast<double>(reports.size());
  };
  auto average_optional = [&](auto getter) -> std::optional<double> {
    double sum = 0.0;
    std::size_t present = 0;
    for (const auto& r : reports) {
      if (auto v = getter(r)) {
        sum += *v;
        ++present;
      }
    }
    if (present == 0) return std::nullopt;
    return sum / static_cast<double>(present);
  };

  mean.action_similarity_bias =
      average_optional([](const MetricsReport& r) { return r.action_similarity_bias; });
  mean.relationship_perception_frequency =
      average([](const MetricsReport& r) { return r.relationship_perception_frequency; });
  mean.information_gap = average([](const MetricsReport& r) { return r.information_gap; });
  mean.diffusion_gap = average([](const MetricsReport& r) { return r.diffusion_gap; });
  mean.diffusion_conversion_gap = mean.information_gap - mean.diffusion_gap;
  mean.information_retention =
      average([](const MetricsReport& r) { return r.information_retention; });
  mean.avg_agent_increase_per_round =
      average([](const MetricsReport& r) { return r.avg_agent_increase_per_round; });
  mean.new_agent_seed_similarity =
      average_optional([](const MetricsReport& r) { return r.new_agent_seed_similarity; });
  return mean;
}

nlohmann::ordered_json report_to_json(const MetricsReport& report) {
  nlohmann::ordered_json j;
  if (report.action_similarity_bias) {
    j["action_similarity_bias"] = *report.action_similarity_bias;
  } else {
    j["action_similarity_bias"] = nullptr;
  }
  j["relationship_perception_frequency"] = report.relationship_perception_frequency;
  j["information_gap"] = report.information_gap;
  j["diffusion_gap"] = report.diffusion_gap;
  j["diffusion_conversion_gap"] = report.diffusion_conversion_gap;
  j["information_retention"] = report.information_retention;
  j["avg_agent_increase_per_round"] = report.avg_agent_increase_per_round;
  if (report.new_agent_seed_similarity) {
    j["new_agent_seed_similarity"] = *report.new_agent_seed_similarity;
  } else {
    j["new_agent_seed_similarity"] = nullptr;
  }
  return j;
}

std::string report_csv_header() {
  return "action_similarity_bias,relationship_perception_frequency,information_gap,"
         "diffusion_gap,diffusion_conversion_gap,information_retention,"
         "avg_agent_increase_per_round,new_agent_seed_similarity";
}

std::string report_csv_row(const MetricsReport& report) {
  std::ostringstream out;
  auto cell = [&](const std::optional<double>& v) {
    if (v) out << *v;
  };
  cell(report.action_similarity_bias);
  out << ',' << report.relationship_perception_frequency << ','
      << report.information_gap << ',' << report.diffusion_gap << ','
      << report.diffusion_conversion_gap << ',' << report.information_retention << ','
      << report.avg_agent_increase_per_round << ',';
  cell(report.new_agent_seed_similarity);
  return out.str();
}

}  // namespace asymsim
