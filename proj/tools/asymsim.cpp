#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "asymsim/core/defaults.hpp"
#include "asymsim/core/errors.hpp"
#include "asymsim/engine/simulation.hpp"
#include "asymsim/export/graph_export.hpp"
#include "asymsim/metrics/metrics.hpp"
#include "asymsim/policy/prompt.hpp"
#include "asymsim/similarity/similarity.hpp"
#include "asymsim/store/run_log_io.hpp"
#include "asymsim/store/snapshot.hpp"

#include "CLI11.hpp"

namespace {

using namespace asymsim;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitTransport = 3;

struct RunOverrides {
  std::string policy;
  std::string provider;
  std::optional<std::uint64_t> seed;
  std::optional<int> rounds;
  std::optional<double> threshold;
};

void apply_overrides(ScenarioConfig& config, const RunOverrides& overrides) {
  if (!overrides.policy.empty()) config.policy.name = overrides.policy;
  if (!overrides.provider.empty()) config.similarity.name = overrides.provider;
  if (overrides.seed) config.rng_seed = *overrides.seed;
  if (overrides.rounds) config.rounds = *overrides.rounds;
  if (overrides.threshold) config.similarity_threshold = *overrides.threshold;
}

void require_valid(const ScenarioConfig& config) {
  const auto violations = validate_config(config);
  if (violations.empty()) return;
  std::ostringstream out;
  out << "invalid config:";
  for (const auto& violation : violations) out << "\n  - " << violation;
  throw ConfigError(out.str());
}

// Wraps a policy to track the largest prompt an llm-backed agent would have
// seen; the stress command reports it.
class PromptMeasuringPolicy final : public Policy {
 public:
  explicit PromptMeasuringPolicy(std::shared_ptr<const Policy> inner)
      : inner_(std::move(inner)) {}

  std::string_view name() const override { return inner_->name(); }

  Decision decide(DecisionRequest& request) const override {
    const std::size_t prompt_size = render_decision_prompt(request).size();
    std::size_t seen = max_prompt_chars_.load();
    while (prompt_size > seen &&
           !max_prompt_chars_.compare_exchange_weak(seen, prompt_size)) {
    }
    return inner_->decide(request);
  }

  std::size_t max_prompt_chars() const { return max_prompt_chars_.load(); }

 private:
  std::shared_ptr<const Policy> inner_;
  mutable std::atomic<std::size_t> max_prompt_chars_{0};
};

std::size_t count_agent_messages(const RunLog& log) {
  std::size_t n = 0;
  for (const auto& event : log.events) {
    if (std::holds_alternative<MessageEvent>(event)) ++n;
  }
  return n;
}

int cmd_run(const fs::path& config_path, const RunOverrides& overrides,
            fs::path out_path, const fs::path& report_path, const fs::path& csv_path,
            int parallel_decisions) {
  ScenarioConfig config = load_config(config_path);
  apply_overrides(config, overrides);
  require_valid(config);

  auto policy = std::shared_ptr<const Policy>(make_policy(config.policy));
  auto provider = make_provider(config.similarity);

  Simulation sim(config, policy);
  sim.set_decision_parallelism(parallel_decisions);
  const RunLog log = sim.run_to_completion();

  if (out_path.empty()) {
    out_path = scenario_name(config) + "-seed" + std::to_string(config.rng_seed) +
               ".jsonl";
  }
  write_run_log(log, out_path);

  const MetricsReport report = compute_metrics(log, *provider);
  const auto report_json = report_to_json(report);
  std::cout << "log: " << out_path.string() << "\n";
  std::cout << report_json.dump(2) << "\n";
  if (!report_path.empty()) {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) throw IoError("cannot write report: " + report_path.string());
    out << report_json.dump(2) << '\n';
  }
  if (!csv_path.empty()) {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw IoError("cannot write report: " + csv_path.string());
    out << report_csv_header() << '\n' << report_csv_row(report) << '\n';
  }
  return kExitOk;
}

struct BatchCell {
  ScenarioConfig config;
  fs::path log_path;
  int rep = 0;
};

int cmd_batch(const fs::path& out_dir, std::vector<std::string> contents,
              std::vector<std::string> mechanisms, std::vector<std::string> topologies,
              std::vector<std::string> polarities, int reps, std::uint64_t base_seed,
              const std::string& policy_name, const std::string& provider_name,
              std::optional<int> rounds, std::optional<double> threshold, int jobs) {
  if (contents.empty() || mechanisms.empty() || topologies.empty() ||
      polarities.empty() || reps < 1) {
    throw ConfigError("batch cross-product is empty");
  }
  fs::create_directories(out_dir);

  std::vector<BatchCell> cells;
  for (const auto& c : contents) {
    const auto content = content_kind_from_string(c);
    if (!content) throw ConfigError("unknown content kind: " + c);
    for (const auto& m : mechanisms) {
      const auto mechanism = mechanism_from_string(m);
      if (!mechanism) throw ConfigError("unknown mechanism: " + m);
      for (const auto& t : topologies) {
        const auto topology = topology_from_string(t);
        if (!topology) throw ConfigError("unknown topology: " + t);
        for (const auto& p : polarities) {
          const auto polarity = polarity_from_string(p);
          if (!polarity) throw ConfigError("unknown polarity: " + p);
          for (int rep = 0; rep < reps; ++rep) {
            ScenarioConfig config =
                default_config(*content, *mechanism, *topology, *polarity);
            config.rng_seed = base_seed + static_cast<std::uint64_t>(rep);
            if (!policy_name.empty()) config.policy.name = policy_name;
            if (!provider_name.empty()) config.similarity.name = provider_name;
            if (rounds) config.rounds = *rounds;
            if (threshold) config.similarity_threshold = *threshold;
            require_valid(config);
            BatchCell cell;
            cell.log_path = out_dir / (scenario_name(config) + "-rep" +
                                       std::to_string(rep + 1) + ".jsonl");
            cell.config = std::move(config);
            cell.rep = rep;
            cells.push_back(std::move(cell));
          }
        }
      }
    }
  }

  struct CellResult {
    bool ok = false;
    std::string error;
    MetricsReport report;
  };
  std::vector<CellResult> results(cells.size());

  auto run_cell = [&](std::size_t i) {
    try {
      const BatchCell& cell = cells[i];
      auto policy = std::shared_ptr<const Policy>(make_policy(cell.config.policy));
      auto provider = make_provider(cell.config.similarity);
      const RunLog log = run(cell.config, policy);
      write_run_log(log, cell.log_path);
      results[i].report = compute_metrics(log, *provider);
      results[i].ok = true;
    } catch (const std::exception& e) {
      results[i].error = e.what();
    }
  };

  const std::size_t workers = std::min<std::size_t>(std::max(jobs, 1), cells.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= cells.size()) break;
          run_cell(i);
        }
      });
    }
    for (auto& worker : pool) worker.join();
  }

  // One aggregate row per environment cell across its repetitions.
  std::map<std::string, std::vector<MetricsReport>> by_cell;
  std::map<std::string, const ScenarioConfig*> cell_config;
  std::size_t failures = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!results[i].ok) {
      ++failures;
      std::cerr << "run failed: " << cells[i].log_path.string() << ": "
                << results[i].error << "\n";
      continue;
    }
    const std::string name = scenario_name(cells[i].config);
    by_cell[name].push_back(results[i].report);
    cell_config[name] = &cells[i].config;
  }

  const fs::path aggregate_path = out_dir / "aggregate.csv";
  {
    std::ofstream out(aggregate_path, std::ios::binary);
    if (!out) throw IoError("cannot write " + aggregate_path.string());
    out << "content,mechanism,topology,polarity,reps," << report_csv_header() << '\n';
    for (const auto& [name, reports] : by_cell) {
      const ScenarioConfig& config = *cell_config.at(name);
      out << to_string(config.content.kind) << ',' << to_string(config.mechanism)
          << ',' << to_string(config.topology) << ','
          << to_string(config.initial_polarity) << ',' << reports.size() << ','
          << report_csv_row(aggregate(reports)) << '\n';
    }
  }

  const fs::path gap_path = out_dir / "gap_chart.csv";
  {
    std::ofstream out(gap_path, std::ios::binary);
    if (!out) throw IoError("cannot write " + gap_path.string());
    out << "environment,topology,polarity,information_gap,diffusion_gap,"
           "diffusion_conversion_gap\n";
    for (const auto& [name, reports] : by_cell) {
      const ScenarioConfig& config = *cell_config.at(name);
      const MetricsReport mean = aggregate(reports);
      out << to_string(config.content.kind) << '-' << to_string(config.mechanism)
          << ',' << to_string(config.topology) << ','
          << to_string(config.initial_polarity) << ',' << mean.information_gap << ','
          << mean.diffusion_gap << ',' << mean.diffusion_conversion_gap << '\n';
    }
  }

  std::cout << "batch: " << cells.size() - failures << "/" << cells.size()
            << " runs completed; aggregates in " << aggregate_path.string() << "\n";
  return failures == 0 ? kExitOk : kExitRuntime;
}

int cmd_metrics(const std::vector<fs::path>& log_paths, const std::string& provider_name,
                std::optional<double> threshold, bool message_summed,
                bool all_pairs_bias, const fs::path& out_path, const fs::path& csv_path) {
  SimilaritySpec spec;
  if (!provider_name.empty()) spec.name = provider_name;
  auto provider = make_provider(spec);

  MetricsOptions options;
  options.threshold = threshold;
  options.message_summed_numerators = message_summed;
  options.all_pairs_bias = all_pairs_bias;

  nlohmann::ordered_json out_json = nlohmann::ordered_json::array();
  std::vector<MetricsReport> reports;
  for (const auto& path : log_paths) {
    const RunLog log = read_run_log(path);
    const MetricsReport report = compute_metrics(log, *provider, options);
    reports.push_back(report);
    nlohmann::ordered_json entry;
    entry["log"] = path.string();
    entry["report"] = report_to_json(report);
    out_json.push_back(std::move(entry));
  }
  if (reports.size() > 1) {
    nlohmann::ordered_json entry;
    entry["log"] = "aggregate";
    entry["report"] = report_to_json(aggregate(reports));
    out_json.push_back(std::move(entry));
  }

  std::cout << out_json.dump(2) << "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot write report: " + out_path.string());
    out << out_json.dump(2) << '\n';
  }
  if (!csv_path.empty()) {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw IoError("cannot write report: " + csv_path.string());
    out << "log," << report_csv_header() << '\n';
    for (std::size_t i = 0; i < reports.size(); ++i) {
      out << log_paths[i].string() << ',' << report_csv_row(reports[i]) << '\n';
    }
  }
  return kExitOk;
}

int cmd_export_graph(const fs::path& log_path, const fs::path& dot_path,
                     const fs::path& json_path, bool include_inactive,
                     const std::string& provider_name) {
  SimilaritySpec spec;
  if (!provider_name.empty()) spec.name = provider_name;
  auto provider = make_provider(spec);

  const RunLog log = read_run_log(log_path);
  GraphExportOptions options;
  options.include_inactive = include_inactive;
  const ExportedGraph graph = build_message_graph(log, *provider, options);

  if (dot_path.empty() && json_path.empty()) {
    std::cout << graph_to_dot(graph);
    return kExitOk;
  }
  if (!dot_path.empty()) {
    std::ofstream out(dot_path, std::ios::binary);
    if (!out) throw IoError("cannot write graph: " + dot_path.string());
    out << graph_to_dot(graph);
  }
  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw IoError("cannot write graph: " + json_path.string());
    out << graph_to_json(graph).dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_stress(int steps, const std::string& policy_name, const std::string& content_name,
               std::uint64_t seed) {
  const auto content = content_kind_from_string(content_name);
  if (!content) throw ConfigError("unknown content kind: " + content_name);
  ScenarioConfig config = default_config(*content, DistributionMechanism::BC,
                                         Topology::wheel, Polarity::positive);
  config.rounds = steps;
  config.rng_seed = seed;
  config.policy.name = policy_name;
  require_valid(config);

  auto inner = std::shared_ptr<const Policy>(make_policy(config.policy));
  auto measuring = std::make_shared<PromptMeasuringPolicy>(inner);

  const auto started = std::chrono::steady_clock::now();
  const RunLog log = run(config, measuring);
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);

  std::cout << "steps: " << steps << "\n";
  std::cout << "agents: " << log.final_summary.roster_size << "\n";
  std::cout << "messages: " << count_agent_messages(log) << "\n";
  std::cout << "wall_time_ms: " << elapsed.count() << "\n";
  std::cout << "max_prompt_chars: " << measuring->max_prompt_chars() << "\n";
  return kExitOk;
}

int cmd_replay(const fs::path& log_path) {
  const RunLog original = read_run_log(log_path);

  const StateSummary replayed = replay_summary(original.config, original.events);
  if (!(replayed == original.final_summary)) {
    std::cerr << "replay mismatch: events do not reproduce the recorded summary\n";
    return kExitRuntime;
  }

  if (original.config.policy.name == "llm") {
    std::cout << "replay: summary verified (llm runs cannot be re-executed)\n";
    return kExitOk;
  }

  auto policy = std::shared_ptr<const Policy>(make_policy(original.config.policy));
  const RunLog rerun = run(original.config, policy);

  std::ostringstream regenerated;
  regenerated << serialize_header(rerun.config) << '\n';
  for (const auto& event : rerun.events) regenerated << serialize_event(event) << '\n';
  regenerated << serialize_summary(rerun.final_summary) << '\n';

  std::ifstream in(log_path, std::ios::binary);
  std::stringstream existing;
  existing << in.rdbuf();

  if (existing.str() != regenerated.str()) {
    std::cerr << "replay mismatch: re-executed run differs from the log file\n";
    return kExitRuntime;
  }
  std::cout << "replay: byte-identical re-execution\n";
  return kExitOk;
}

int cmd_scenarios(const fs::path& out_dir) {
  fs::create_directories(out_dir);
  const auto configs = bundled_scenarios();
  for (const auto& config : configs) {
    save_config(config, out_dir / (scenario_name(config) + ".json"));
  }

  // Reference copies of the fixed roster and the four content texts.
  nlohmann::ordered_json profiles = nlohmann::ordered_json::array();
  for (const auto& profile : default_profiles()) {
    profiles.push_back({{"id", profile.id},
                        {"age", profile.age},
                        {"gender", profile.gender},
                        {"innate", profile.innate},
                        {"occupation", profile.occupation}});
  }
  nlohmann::ordered_json contents = nlohmann::ordered_json::object();
  for (auto kind :
       {ContentKind::OG, ContentKind::PP, ContentKind::LC, ContentKind::SH}) {
    contents[std::string(to_string(kind))] = default_content(kind).text;
  }
  std::ofstream(out_dir / "profiles.json") << profiles.dump(2) << '\n';
  std::ofstream(out_dir / "contents.json") << contents.dump(2) << '\n';

  std::cout << "wrote " << configs.size() << " scenario configs to "
            << out_dir.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"asymsim: round-based multi-agent information-diffusion simulator"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "execute one scenario and report metrics");
  fs::path run_config;
  RunOverrides run_overrides;
  fs::path run_out, run_report, run_csv;
  int run_parallel = 1;
  run_cmd->add_option("--config", run_config, "scenario config file")->required();
  run_cmd->add_option("--policy", run_overrides.policy, "override policy name");
  run_cmd->add_option("--provider", run_overrides.provider,
                      "override similarity provider");
  run_cmd->add_option("--seed", run_overrides.seed, "override rng seed");
  run_cmd->add_option("--rounds", run_overrides.rounds, "override round count");
  run_cmd->add_option("--threshold", run_overrides.threshold,
                      "override similarity threshold");
  run_cmd->add_option("--out", run_out, "run log path (jsonl)");
  run_cmd->add_option("--report", run_report, "write the metrics report (json)");
  run_cmd->add_option("--csv", run_csv, "write the metrics report (csv)");
  run_cmd->add_option("--parallel-decisions", run_parallel,
                      "concurrent policy queries per round");

  auto* batch_cmd = app.add_subcommand("batch", "run the environment matrix");
  fs::path batch_dir;
  std::vector<std::string> batch_contents{"OG", "PP", "LC", "SH"};
  std::vector<std::string> batch_mechanisms{"BC", "OA", "BCR"};
  std::vector<std::string> batch_topologies{"wheel", "circle"};
  std::vector<std::string> batch_polarities{"positive", "negative"};
  int batch_reps = 3;
  std::uint64_t batch_seed = 1;
  std::string batch_policy, batch_provider;
  std::optional<int> batch_rounds;
  std::optional<double> batch_threshold;
  int batch_jobs = 1;
  batch_cmd->add_option("--out-dir", batch_dir, "output directory")->required();
  batch_cmd->add_option("--contents", batch_contents, "content kinds")->delimiter(',');
  batch_cmd->add_option("--mechanisms", batch_mechanisms, "distribution mechanisms")
      ->delimiter(',');
  batch_cmd->add_option("--topologies", batch_topologies, "topologies")->delimiter(',');
  batch_cmd->add_option("--polarities", batch_polarities, "initial polarities")
      ->delimiter(',');
  batch_cmd->add_option("--reps", batch_reps, "repetitions per cell");
  batch_cmd->add_option("--seed", batch_seed, "base seed (rep k uses seed+k)");
  batch_cmd->add_option("--policy", batch_policy, "policy for every run");
  batch_cmd->add_option("--provider", batch_provider, "similarity provider");
  batch_cmd->add_option("--rounds", batch_rounds, "override round count");
  batch_cmd->add_option("--threshold", batch_threshold, "override similarity threshold");
  batch_cmd->add_option("--jobs", batch_jobs, "parallel runs");

  auto* metrics_cmd = app.add_subcommand("metrics", "recompute metrics from run logs");
  std::vector<fs::path> metrics_logs;
  std::string metrics_provider;
  std::optional<double> metrics_threshold;
  bool metrics_message_summed = false;
  bool metrics_all_pairs = false;
  fs::path metrics_out, metrics_csv;
  metrics_cmd->add_option("logs", metrics_logs, "run log files")->required();
  metrics_cmd->add_option("--provider", metrics_provider, "similarity provider");
  metrics_cmd->add_option("--threshold", metrics_threshold, "similarity threshold");
  metrics_cmd->add_flag("--message-summed", metrics_message_summed,
                        "count qualifying messages instead of distinct agents");
  metrics_cmd->add_flag("--all-pairs-bias", metrics_all_pairs,
                        "bias over all message pairs instead of consecutive ones");
  metrics_cmd->add_option("--out", metrics_out, "write reports (json)");
  metrics_cmd->add_option("--csv", metrics_csv, "write reports (csv)");

  auto* graph_cmd =
      app.add_subcommand("export-graph", "emit lineage/message graph files");
  fs::path graph_log, graph_dot, graph_json;
  bool graph_include_inactive = false;
  std::string graph_provider;
  graph_cmd->add_option("log", graph_log, "run log file")->required();
  graph_cmd->add_option("--dot", graph_dot, "DOT output path");
  graph_cmd->add_option("--json", graph_json, "JSON output path");
  graph_cmd->add_flag("--include-inactive", graph_include_inactive,
                      "also draw agents that never acted");
  graph_cmd->add_option("--provider", graph_provider, "similarity provider");

  auto* stress_cmd = app.add_subcommand("stress", "growth/message-cap stress run");
  int stress_steps = 10;
  std::string stress_policy = "forced_recruit";
  std::string stress_content = "OG";
  std::uint64_t stress_seed = 1;
  stress_cmd->add_option("--steps", stress_steps, "rounds to run")
      ->check(CLI::PositiveNumber);
  stress_cmd->add_option("--policy", stress_policy, "policy (default forced_recruit)");
  stress_cmd->add_option("--content", stress_content, "content kind");
  stress_cmd->add_option("--seed", stress_seed, "rng seed");

  auto* replay_cmd = app.add_subcommand("replay", "verify a log by re-execution");
  fs::path replay_log;
  replay_cmd->add_option("log", replay_log, "run log file")->required();

  auto* scenarios_cmd =
      app.add_subcommand("scenarios", "write the bundled scenario configs");
  fs::path scenarios_dir;
  scenarios_cmd->add_option("--out-dir", scenarios_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) {
      return cmd_run(run_config, run_overrides, run_out, run_report, run_csv,
                     run_parallel);
    }
    if (batch_cmd->parsed()) {
      return cmd_batch(batch_dir, batch_contents, batch_mechanisms, batch_topologies,
                       batch_polarities, batch_reps, batch_seed, batch_policy,
                       batch_provider, batch_rounds, batch_threshold, batch_jobs);
    }
    if (metrics_cmd->parsed()) {
      return cmd_metrics(metrics_logs, metrics_provider, metrics_threshold,
                         metrics_message_summed, metrics_all_pairs, metrics_out,
                         metrics_csv);
    }
    if (graph_cmd->parsed()) {
      return cmd_export_graph(graph_log, graph_dot, graph_json,
                              graph_include_inactive, graph_provider);
    }
    if (stress_cmd->parsed()) {
      return cmd_stress(stress_steps, stress_policy, stress_content, stress_seed);
    }
    if (replay_cmd->parsed()) return cmd_replay(replay_log);
    if (scenarios_cmd->parsed()) return cmd_scenarios(scenarios_dir);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const TransportError& e) {
    std::cerr << "transport error: " << e.what() << "\n";
    return kExitTransport;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
