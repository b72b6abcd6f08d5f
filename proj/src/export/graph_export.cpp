#include "asymsim/export/graph_export.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace asymsim {

namespace {

constexpr std::array<const char*, 5> kLineagePalette = {
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1"};

AgentId resolve_root(AgentId id, const std::map<AgentId, AgentId>& lineage) {
  AgentId current = id;
  for (int hops = 0; hops < 1024; ++hops) {
    auto it = lineage.find(current);
    if (it == lineage.end() || it->second == current) return current;
    current = it->second;
  }
  return current;
}

}  // namespace

ExportedGraph build_message_graph(const RunLog& log,
                                  const SimilarityProvider& provider,
                                  const GraphExportOptions& options) {
  std::map<AgentId, AgentId> lineage;
  for (AgentId a = 1; a <= kInitialAgentCount; ++a) lineage[a] = a;

  std::map<AgentId, std::vector<std::string>> sent_by;
  std::map<std::pair<AgentId, AgentId>, std::vector<std::string>> edge_contents;
  std::set<AgentId> actors;
  std::set<AgentId> visible;

  for (const auto& event : log.events) {
    if (const auto* msg = std::get_if<MessageEvent>(&event)) {
      const Message& m = msg->message;
      sent_by[m.sender].push_back(m.content);
      edge_contents[{m.sender, m.receiver}].push_back(m.content);
      actors.insert(m.sender);
      visible.insert(m.sender);
      visible.insert(m.receiver);
    } else if (const auto* recruit = std::get_if<RecruitEvent>(&event)) {
      lineage[recruit->profile.id] = recruit->recruiter;
      actors.insert(recruit->recruiter);
      visible.insert(recruit->recruiter);
      visible.insert(recruit->profile.id);
    } else if (const auto* change = std::get_if<RelationshipChangeEvent>(&event)) {
      actors.insert(change->actor);
    }
  }

  if (options.include_inactive) {
    for (AgentId a = 1; a <= kInitialAgentCount; ++a) visible.insert(a);
    for (const auto& [id, recruiter] : lineage) visible.insert(id);
  }

  ExportedGraph graph;
  for (AgentId id : visible) {
    graph.nodes.push_back({id, resolve_root(id, lineage), actors.contains(id)});
  }

  // Mean similarity of one content against an endpoint's sent history,
  // skipping one exact occurrence of the content itself.
  auto history_similarity = [&](const std::string& content, AgentId endpoint,
                                bool skip_self_once) {
    auto it = sent_by.find(endpoint);
    if (it == sent_by.end()) return std::pair<double, std::size_t>{0.0, 0};
    double sum = 0.0;
    std::size_t compared = 0;
    bool skipped = false;
    for (const auto& other : it->second) {
      if (skip_self_once && !skipped && other == content) {
        skipped = true;
        continue;
      }
      sum += provider.similarity(content, other);
      ++compared;
    }
    return std::pair<double, std::size_t>{sum, compared};
  };

  for (const auto& [key, contents] : edge_contents) {
    GraphEdge edge;
    edge.from = key.first;
    edge.to = key.second;
    edge.message_count = contents.size();
    double sender_sum = 0.0;
    std::size_t sender_n = 0;
    double receiver_sum = 0.0;
    std::size_t receiver_n = 0;
    for (const auto& content : contents) {
      auto [s_sum, s_n] = history_similarity(content, edge.from, true);
      sender_sum += s_sum;
      sender_n += s_n;
      auto [r_sum, r_n] = history_similarity(content, edge.to, false);
      receiver_sum += r_sum;
      receiver_n += r_n;
    }
    edge.sim_to_sender_history = sender_n ? sender_sum / static_cast<double>(sender_n) : 0.0;
    edge.sim_to_receiver_history =
        receiver_n ? receiver_sum / static_cast<double>(receiver_n) : 0.0;
    graph.edges.push_back(edge);
  }

  return graph;
}

std::string graph_to_dot(const ExportedGraph& graph) {
  std::ostringstream out;
  out << "digraph diffusion {\n";
  out << "  rankdir=LR;\n";
  out << "  node [style=filled, fontname=\"Helvetica\"];\n";
  for (const auto& node : graph.nodes) {
    const char* color =
        kLineagePalette[static_cast<std::size_t>((node.lineage_root - 1) %
                                                 kLineagePalette.size())];
    out << "  \"" << node.id << "\" [fillcolor=\"" << color << "\", lineage=\""
        << node.lineage_root << "\"];\n";
  }
  for (const auto& edge : graph.edges) {
    const double sim = (edge.sim_to_sender_history + edge.sim_to_receiver_history) / 2.0;
    // Darker edges carry content closer to what the endpoints usually say.
    const int gray = 85 - static_cast<int>(std::lround(sim * 60.0));
    out << "  \"" << edge.from << "\" -> \"" << edge.to << "\" [color=\"gray" << gray
        << "\", penwidth=" << 0.8 + 2.0 * sim << ", label=\"" << edge.message_count
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

nlohmann::ordered_json graph_to_json(const ExportedGraph& graph) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
  for (const auto& node : graph.nodes) {
    nodes.push_back({{"id", node.id},
                     {"lineage", node.lineage_root},
                     {"acted", node.acted}});
  }
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (const auto& edge : graph.edges) {
    edges.push_back({{"from", edge.from},
                     {"to", edge.to},
                     {"messages", edge.message_count},
                     {"sim_to_sender_history", edge.sim_to_sender_history},
                     {"sim_to_receiver_history", edge.sim_to_receiver_history}});
  }
  j["nodes"] = std::move(nodes);
  j["edges"] = std::move(edges);
  return j;
}

}  // namespace asymsim
