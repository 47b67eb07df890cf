#include "fingraph_cli/graph_json.hpp"

#include <fingraph/error.hpp>

#include <cmath>
#include <fstream>

namespace fingraph::cli {

using nlohmann::ordered_json;

ordered_json config_to_json(const SolverConfig& c) {
  ordered_json j;
  j["rho"] = c.rho;
  j["eta"] = c.eta ? ordered_json(*c.eta) : ordered_json(nullptr);
  j["nu"] = c.nu ? ordered_json(*c.nu) : ordered_json(nullptr);
  j["k"] = c.k;
  if (c.degree_target) {
    j["degree_target"] = std::vector<double>(c.degree_target->data(),
                                             c.degree_target->data() + c.degree_target->size());
  } else {
    j["degree_target"] = nullptr;
  }
  j["tol"] = c.tol;
  j["max_iter"] = c.max_iter;
  j["inner_iter"] = c.inner_iter;
  j["adaptive_rho"] = c.adaptive_rho;
  j["rho_growth"] = c.rho_growth;
  j["rho_max"] = c.rho_max;
  j["init"] = to_string(c.init);
  j["rank_tol"] = c.rank_tol;
  return j;
}

SolverConfig config_from_json(const nlohmann::json& j) {
  SolverConfig c;
  try {
    c.rho = j.at("rho").get<double>();
    if (!j.at("eta").is_null()) c.eta = j.at("eta").get<double>();
    if (!j.at("nu").is_null()) c.nu = j.at("nu").get<double>();
    c.k = j.at("k").get<Index>();
    if (!j.at("degree_target").is_null()) {
      const auto d = j.at("degree_target").get<std::vector<double>>();
      c.degree_target = Eigen::Map<const Vector>(d.data(), static_cast<Index>(d.size()));
    }
    c.tol = j.at("tol").get<double>();
    c.max_iter = j.at("max_iter").get<int>();
    c.inner_iter = j.at("inner_iter").get<int>();
    c.adaptive_rho = j.at("adaptive_rho").get<bool>();
    c.rho_growth = j.at("rho_growth").get<double>();
    c.rho_max = j.at("rho_max").get<double>();
    c.init = parse_init_mode(j.at("init").get<std::string>());
    c.rank_tol = j.at("rank_tol").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("invalid solver config: ") + e.what());
  }
  return c;
}

GraphDocument document_from_estimate(const GraphEstimate& estimate) {
  GraphDocument doc;
  doc.nodes = estimate.node_names;
  doc.weights = estimate.weights.values();
  doc.method = to_string(estimate.method);
  doc.converged = estimate.converged;
  doc.iterations = estimate.iterations;
  doc.config = config_to_json(estimate.config);
  return doc;
}

namespace {

ordered_json checks_for(const Vector& weights, Index p, Index edge_total) {
  const Matrix l = laplacian(weights, p);
  ordered_json j;
  j["edge_count"] = edge_total;
  j["weight_sum"] = weights.sum();
  j["laplacian_row_sum_max"] = l.rowwise().sum().cwiseAbs().maxCoeff();
  j["degree_min"] = degrees(weights, p).minCoeff();
  return j;
}

Vector emitted(const Vector& weights) {
  return weights.unaryExpr([](double w) { return w > kEmissionThreshold ? w : 0.0; });
}

}  // namespace

ordered_json to_json(const GraphDocument& doc) {
  const Index p = doc.p();
  if (doc.weights.size() != edge_count(p)) throw DimensionError("graph weights do not match node count");
  const Vector w = emitted(doc.weights);
  ordered_json j;
  j["p"] = p;
  j["nodes"] = doc.nodes;
  ordered_json edges = ordered_json::array();
  Index k = 0;
  for (Index b = 0; b < p; ++b) {
    for (Index a = b + 1; a < p; ++a, ++k) {
      if (w[k] > 0.0) edges.push_back(ordered_json{{"i", b}, {"j", a}, {"weight", w[k]}});
    }
  }
  const auto total = static_cast<Index>(edges.size());
  j["edges"] = std::move(edges);
  j["method"] = doc.method;
  j["converged"] = doc.converged;
  j["iterations"] = doc.iterations;
  j["config"] = doc.config;
  j["checks"] = checks_for(w, p, total);
  for (const auto& [key, value] : doc.extra.items()) j[key] = value;
  return j;
}

GraphDocument graph_from_json(const nlohmann::json& j) {
  GraphDocument doc;
  try {
    const Index p = j.at("p").get<Index>();
    doc.nodes = j.at("nodes").get<std::vector<std::string>>();
    if (p < 2 || static_cast<Index>(doc.nodes.size()) != p) {
      throw DataError("graph JSON: p does not match the node list");
    }
    doc.weights = Vector::Zero(edge_count(p));
    for (const auto& e : j.at("edges")) {
      const Index a = e.at("i").get<Index>();
      const Index b = e.at("j").get<Index>();
      const double w = e.at("weight").get<double>();
      if (a < 0 || b >= p || a >= b) throw DataError("graph JSON: edge indices must satisfy 0 <= i < j < p");
      if (!(w > 0.0) || !std::isfinite(w)) throw DataError("graph JSON: edge weights must be positive");
      doc.weights[edge_index(b, a, p)] = w;
    }
    doc.method = j.value("method", "");
    doc.converged = j.value("converged", true);
    doc.iterations = j.value("iterations", 0);
    if (j.contains("config")) doc.config = j.at("config");
    for (const auto& [key, value] : j.items()) {
      if (key != "p" && key != "nodes" && key != "edges" && key != "method" && key != "converged" &&
          key != "iterations" && key != "config" && key != "checks") {
        doc.extra[key] = value;
      }
    }
    if (j.contains("checks")) {
      const auto& c = j.at("checks");
      const auto expected = checks_for(doc.weights, p, static_cast<Index>(j.at("edges").size()));
      const double scale = std::max(1.0, doc.weights.sum());
      if (c.at("edge_count").get<Index>() != expected["edge_count"].get<Index>() ||
          std::abs(c.at("weight_sum").get<double>() - expected["weight_sum"].get<double>()) > 1e-9 * scale ||
          c.at("laplacian_row_sum_max").get<double>() > 1e-8 * scale) {
        throw DataError("graph JSON: embedded checks do not match the edges");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("graph JSON: ") + e.what());
  }
  return doc;
}

void write_json_file(const std::string& path, const ordered_json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_graph_json(const std::string& path, const GraphDocument& doc) { write_json_file(path, to_json(doc)); }

GraphDocument read_graph_json(const std::string& path) { return graph_from_json(read_json_file(path)); }

}  // namespace fingraph::cli
