#pragma once

#include <optional>
#include <string>
#include <vector>

#include "asymsim/engine/run_log.hpp"
#include "asymsim/similarity/similarity.hpp"

#include "json.hpp"

namespace asymsim {

// Per-run evaluation values. Single-run RPF and retention are whole numbers;
// the fields are doubles because aggregated means are fractional. The two
// optional fields are absent when no agent/recruit qualifies.
struct MetricsReport {
  std::optional<double> action_similarity_bias;     // [0,1]
  double relationship_perception_frequency = 0.0;   // >= 0
  double information_gap = 0.0;                     // percentage
  double diffusion_gap = 0.0;                       // percentage
  double diffusion_conversion_gap = 0.0;            // information - diffusion
  double information_retention = 0.0;               // rounds [0, config.rounds]
  double avg_agent_increase_per_round = 0.0;
  std::optional<double> new_agent_seed_similarity;  // [0,1]
};

struct MetricsOptions {
  // Defaults to the run config's similarity_threshold.
  std::optional<double> threshold;
  // Count qualifying messages instead of distinct agents in the two gap
  // numerators (the literal summed form, which can exceed 100%).
  bool message_summed_numerators = false;
  // Average every message pair per agent instead of consecutive pairs.
  bool all_pairs_bias = false;
};

MetricsReport compute_metrics(const RunLog& log, const SimilarityProvider& provider,
                              const MetricsOptions& options = {});

// Field-wise arithmetic mean; absent optionals are excluded per field.
// Throws ConfigError on an empty list.
MetricsReport aggregate(const std::vector<MetricsReport>& reports);

nlohmann::ordered_json report_to_json(const MetricsReport& report);
std::string report_csv_header();
std::string report_csv_row(const MetricsReport& report);

}  // namespace asymsim
