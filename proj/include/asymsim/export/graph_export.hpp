#pragma once

#include <string>
#include <vector>

#include "asymsim/engine/run_log.hpp"
#include "asymsim/similarity/similarity.hpp"

#include "json.hpp"

namespace asymsim {

struct GraphNode {
  AgentId id = 0;
  AgentId lineage_root = 0;  // the initial agent this node descends from
  bool acted = false;        // sent, recruited, or changed a relationship
};

struct GraphEdge {
  AgentId from = 0;
  AgentId to = 0;
  std::size_t message_count = 0;
  // Mean over the edge's messages of the mean similarity between the carried
  // content and the endpoint's other sent messages; 0 when there is nothing
  // to compare against.
  double sim_to_sender_history = 0.0;
  double sim_to_receiver_history = 0.0;
};

struct ExportedGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
};

struct GraphExportOptions {
  // By default only agents that appear in a message edge or a recruitment are
  // drawn; this adds the rest of the roster as isolated nodes.
  bool include_inactive = false;
};

ExportedGraph build_message_graph(const RunLog& log,
                                  const SimilarityProvider& provider,
                                  const GraphExportOptions& options = {});

std::string graph_to_dot(const ExportedGraph& graph);
nlohmann::ordered_json graph_to_json(const ExportedGraph& graph);

}  // namespace asymsim
