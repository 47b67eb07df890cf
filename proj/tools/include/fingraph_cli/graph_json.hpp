#pragma once

#include <fingraph/graph_ops.hpp>
#include <fingraph/solvers.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace fingraph::cli {

/// Edges at or below this weight are not written.
inline constexpr double kEmissionThreshold = 1e-8;

/// In-memory form of the graph JSON file.
struct GraphDocument {
  std::vector<std::string> nodes;
  Vector weights;  // full edge vector, zeros for absent edges
  std::string method;
  bool converged = true;
  int iterations = 0;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();

  Index p() const { return static_cast<Index>(nodes.size()); }
  WeightVector weight_vector() const { return WeightVector(weights, p()); }
};

nlohmann::ordered_json config_to_json(const SolverConfig& config);
SolverConfig config_from_json(const nlohmann::json& j);

GraphDocument document_from_estimate(const GraphEstimate& estimate);

nlohmann::ordered_json to_json(const GraphDocument& doc);
/// Validates node count, index ranges, weights and the embedded checks.
GraphDocument graph_from_json(const nlohmann::json& j);

void write_graph_json(const std::string& path, const GraphDocument& doc);
GraphDocument read_graph_json(const std::string& path);

void write_json_file(const std::string& path, const nlohmann::ordered_json& j);
nlohmann::json read_json_file(const std::string& path);

}  // namespace fingraph::cli
