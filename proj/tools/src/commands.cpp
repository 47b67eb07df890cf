#include "fingraph_cli/commands.hpp"

#include "fingraph_cli/graph_json.hpp"

#include <fingraph/error.hpp>
#include <fingraph/io.hpp>
#include <fingraph/metrics.hpp>
#include <fingraph/preprocess.hpp>
#include <fingraph/solvers.hpp>
#include <fingraph/synth.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>

namespace fingraph::cli {

using nlohmann::ordered_json;

std::string tool_version() { return "0.1.0"; }

namespace {

// CLI11 consumes a reversed argument vector.
void parse(CLI::App& app, std::vector<std::string> args) {
  std::reverse(args.begin(), args.end());
  app.parse(args);
}

int handle_parse_error(const CLI::App& app, const CLI::ParseError& e, std::ostream& out,
                       std::ostream& err) {
  if (e.get_exit_code() == 0) {
    out << app.help();
    return kExitOk;
  }
  err << "error: " << e.what() << '\n';
  return kExitError;
}

std::string replace_suffix(const std::string& path, const std::string& suffix) {
  const auto dot = path.rfind('.');
  const auto slash = path.find_last_of("/\\");
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  return (has_ext ? path.substr(0, dot) : path) + suffix;
}

std::optional<double> parse_number(const std::string& text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

// ---------------------------------------------------------------- learn

struct LearnOptions {
  std::string input;
  bool prices = false;
  std::string method = "connected";
  SolverConfig config;
  std::string degree;  // scalar or CSV path, as given
  std::string similarity = "correlation";
  bool remove_market = false;
  long long seed = 0;
  std::string out;
  std::string trace;
  std::string manifest;
};

// node,degree CSV in the order of `names`.
Vector read_degree_csv(const std::string& path, const std::vector<std::string>& names) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open degree file '" + path + "'");
  std::string line;
  std::getline(in, line);
  std::map<std::string, double> by_name;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    const auto value = comma == std::string::npos ? std::nullopt : parse_number(line.substr(comma + 1));
    if (!value) throw DataError("degree file: cannot parse line '" + line + "'");
    by_name[line.substr(0, comma)] = *value;
  }
  Vector d(static_cast<Index>(names.size()));
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto it = by_name.find(names[i]);
    if (it == by_name.end()) throw DataError("degree file has no entry for node '" + names[i] + "'");
    d[static_cast<Index>(i)] = it->second;
  }
  return d;
}

ordered_json manifest_json(const LearnOptions& o, const SolverConfig& resolved) {
  ordered_json j;
  j["tool"] = "fingraph";
  j["version"] = tool_version();
  j["command"] = "learn";
  j["input"] = o.input;
  j["prices"] = o.prices;
  j["method"] = to_string(parse_method(o.method));
  j["config"] = config_to_json(resolved);
  j["similarity"] = {{"kind", o.similarity},
                     {"market_removed", o.remove_market},
                     {"scaled", o.similarity != "covariance"}};
  j["seed"] = o.seed;
  j["outputs"] = {{"graph", o.out}, {"trace", o.trace}, {"manifest", o.manifest}};
  return j;
}

LearnOptions options_from_manifest(const nlohmann::json& j) {
  LearnOptions o;
  try {
    o.input = j.at("input").get<std::string>();
    o.prices = j.at("prices").get<bool>();
    o.method = j.at("method").get<std::string>();
    o.config = config_from_json(j.at("config"));
    o.similarity = j.at("similarity").at("kind").get<std::string>();
    o.remove_market = j.at("similarity").at("market_removed").get<bool>();
    o.seed = j.at("seed").get<long long>();
    o.out = j.at("outputs").at("graph").get<std::string>();
    o.trace = j.at("outputs").at("trace").get<std::string>();
    o.manifest = j.at("outputs").at("manifest").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("invalid manifest: ") + e.what());
  }
  return o;
}

int run_learn(LearnOptions o, std::ostream& out, std::ostream& err) {
  const Method method = parse_method(o.method);
  const SimilarityKind kind = parse_similarity(o.similarity);
  if (is_student_t(method) && !o.config.nu) {
    throw ParameterError("--nu is required for method " + o.method);
  }

  const CsvTable table = read_csv_table(o.input);
  if (table.dropped_rows > 0) {
    err << "warning: dropped " << table.dropped_rows << " row(s) with missing values\n";
  }
  const ReturnsMatrix x = o.prices ? log_returns(table.values, table.columns, table.timestamps)
                                   : ReturnsMatrix(table.values, table.columns, table.timestamps);
  const Index p = x.assets();

  if (!o.degree.empty()) {
    if (const auto scalar = parse_number(o.degree)) {
      o.config.degree_target = Vector::Constant(p, *scalar);
    } else {
      o.config.degree_target = read_degree_csv(o.degree, x.names());
    }
  }
  o.config.validate(method, p);

  std::optional<ObjectiveData> data;
  if (is_student_t(method)) {
    if (x.observations() < 2) throw DataError("Student-t methods need at least 2 observations");
    Matrix values = kind == SimilarityKind::Covariance ? x.values() : scale_columns(x.values());
    if (o.remove_market) values = remove_market_factor(values);
    data = ObjectiveData::student_t(values, *o.config.nu);
  } else {
    SimilaritySpec spec{kind, o.remove_market, kind != SimilarityKind::Covariance};
    data = ObjectiveData::gaussian(similarity(x, spec));
  }

  GraphLearner learner(method, std::move(*data), o.config);
  const GraphEstimate estimate = learner.run(x.names());

  if (o.trace.empty()) o.trace = replace_suffix(o.out, ".trace.csv");
  if (o.manifest.empty()) o.manifest = replace_suffix(o.out, ".manifest.json");

  write_graph_json(o.out, document_from_estimate(estimate));
  {
    std::ofstream trace_file(o.trace, std::ios::binary);
    if (!trace_file) throw DataError("cannot write '" + o.trace + "'");
    write_trace_csv(trace_file, estimate.trace);
  }
  write_json_file(o.manifest, manifest_json(o, o.config));

  out << to_string(method) << ": " << (estimate.converged ? "converged" : "did not converge")
      << " after " << estimate.iterations << " iterations\n";
  return estimate.converged ? kExitOk : kExitNotConverged;
}

// ---------------------------------------------------------------- metrics

NodeLabels read_labels(const std::string& path, const std::vector<std::string>& nodes) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open labels file '" + path + "'");
  std::string line;
  std::getline(in, line);
  std::map<std::string, int> by_name;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    const auto value = comma == std::string::npos ? std::nullopt : parse_number(line.substr(comma + 1));
    if (!value || *value != static_cast<int>(*value)) {
      throw DataError("labels file: cannot parse line '" + line + "'");
    }
    by_name[line.substr(0, comma)] = static_cast<int>(*value);
  }
  if (by_name.size() != nodes.size()) {
    throw DataError("labels file has " + std::to_string(by_name.size()) + " nodes, graph has " +
                    std::to_string(nodes.size()));
  }
  std::vector<int> labels;
  for (const auto& name : nodes) {
    const auto it = by_name.find(name);
    if (it == by_name.end()) throw DataError("labels file has no entry for node '" + name + "'");
    labels.push_back(it->second);
  }
  return NodeLabels(std::move(labels));
}

}  // namespace

int cmd_learn(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Learn a graph from returns or prices", "fingraph learn"};
  LearnOptions o;
  std::optional<double> eta, nu;
  std::optional<Index> k;
  std::string init = "pinv-neg";
  std::string replay;
  app.add_option("--input", o.input, "CSV of returns (or prices with --prices)");
  app.add_flag("--prices", o.prices, "Treat input as prices and take log-returns");
  app.add_option("--method", o.method, "connected, k, t or kt")->capture_default_str();
  app.add_option("--k", k, "Number of components (k and kt)");
  app.add_option("--nu", nu, "Student-t degrees of freedom, > 2");
  app.add_option("--rho", o.config.rho, "ADMM penalty")->capture_default_str();
  app.add_option("--eta", eta, "Spectral penalty weight (default 100*mean|S|)");
  app.add_option("--tol", o.config.tol, "Residual tolerance")->capture_default_str();
  app.add_option("--max-iter", o.config.max_iter, "Outer iteration cap")->capture_default_str();
  app.add_option("--inner-iter", o.config.inner_iter, "Inner MM steps")->capture_default_str();
  app.add_flag("--adaptive-rho", o.config.adaptive_rho, "Grow rho when the Lagrangian increases");
  app.add_option("--degree", o.degree, "Degree target: scalar or node,degree CSV");
  app.add_option("--similarity", o.similarity, "correlation, covariance or nmi")->capture_default_str();
  app.add_flag("--remove-market", o.remove_market, "Remove the top eigen-component");
  app.add_option("--init", init, "pinv or pinv-neg")->capture_default_str();
  app.add_option("--seed", o.seed, "Recorded in the manifest");
  app.add_option("--out", o.out, "Graph JSON path");
  app.add_option("--trace", o.trace, "Trace CSV path (default <out>.trace.csv)");
  app.add_option("--manifest", o.manifest, "Manifest path (default <out>.manifest.json)");
  app.add_option("--replay", replay, "Re-run from a manifest JSON");

  try {
    parse(app, args);
  } catch (const CLI::ParseError& e) {
    return handle_parse_error(app, e, out, err);
  }

  try {
    if (!replay.empty()) {
      LearnOptions r = options_from_manifest(read_json_file(replay));
      if (!o.out.empty()) {
        r.out = o.out;
        r.trace = o.trace;
        r.manifest = o.manifest;
      }
      return run_learn(std::move(r), out, err);
    }
    if (o.input.empty()) throw ParameterError("--input is required");
    if (o.out.empty()) throw ParameterError("--out is required");
    o.config.eta = eta;
    o.config.nu = nu;
    if (k) o.config.k = *k;
    o.config.init = parse_init_mode(init);
    return run_learn(std::move(o), out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_metrics(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Report graph metrics", "fingraph metrics"};
  std::string graph_path, labels_path, compare_path, out_path;
  double threshold = kEdgeThreshold;
  app.add_option("--graph", graph_path, "Graph JSON")->required();
  app.add_option("--labels", labels_path, "node,label CSV");
  app.add_option("--compare", compare_path, "Reference graph JSON");
  app.add_option("--threshold", threshold, "Edge presence threshold")->capture_default_str();
  app.add_option("--out", out_path, "Write the report here instead of stdout");
  try {
    parse(app, args);
  } catch (const CLI::ParseError& e) {
    return handle_parse_error(app, e, out, err);
  }

  try {
    const GraphDocument graph = read_graph_json(graph_path);
    const SymmetricMatrix w = adjacency_op(graph.weight_vector());
    ordered_json report;
    report["p"] = graph.p();
    report["threshold"] = threshold;
    const Partition parts = components(w, threshold);
    report["components"] = parts.count;
    report["edges"] = (graph.weights.array() > threshold).count();
    if (!labels_path.empty()) {
      const NodeLabels labels = read_labels(labels_path, graph.nodes);
      report["modularity"] = modularity(w, labels);
      const EdgeDistribution dist = edge_distribution(w, labels, threshold);
      report["edge_distribution"] = {{"intra", dist.intra}, {"inter", dist.inter}};
    }
    if (!compare_path.empty()) {
      const GraphDocument ref = read_graph_json(compare_path);
      if (ref.nodes != graph.nodes) throw DataError("compared graphs have different node names");
      const FScore f = edge_fscore(graph.weight_vector(), ref.weight_vector(), threshold);
      report["comparison"] = {
          {"fscore", f.fscore},
          {"precision", f.precision},
          {"recall", f.recall},
          {"relative_error",
           relative_error(laplacian_op(graph.weight_vector()), laplacian_op(ref.weight_vector()))}};
    }
    if (out_path.empty()) {
      out << report.dump(2) << '\n';
    } else {
      write_json_file(out_path, report);
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_simulate(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sample a planted graph and data from it", "fingraph simulate"};
  Index p = 0, k = 1, n = 0;
  std::string dist = "gaussian";
  std::optional<double> nu;
  unsigned long long seed = 0;
  double intra_prob = 0.5, wmin = 1.0, wmax = 2.0;
  std::string graph_path = "planted.json", data_path = "samples.csv", labels_path;
  app.add_option("--p", p, "Number of nodes")->required();
  app.add_option("--k", k, "Number of components")->capture_default_str();
  app.add_option("--n", n, "Number of samples")->required();
  app.add_option("--dist", dist, "gaussian or t")->check(CLI::IsMember({"gaussian", "t"}))->capture_default_str();
  app.add_option("--nu", nu, "Degrees of freedom for --dist t");
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--intra-prob", intra_prob, "Extra intra-block edge probability")->capture_default_str();
  app.add_option("--weight-min", wmin, "Lower edge weight")->capture_default_str();
  app.add_option("--weight-max", wmax, "Upper edge weight")->capture_default_str();
  app.add_option("--out-graph", graph_path, "Planted graph JSON")->capture_default_str();
  app.add_option("--out-data", data_path, "Sample CSV")->capture_default_str();
  app.add_option("--labels-out", labels_path, "node,label CSV of the planted blocks");
  try {
    parse(app, args);
  } catch (const CLI::ParseError& e) {
    return handle_parse_error(app, e, out, err);
  }

  try {
    if (dist == "t" && !nu) throw ParameterError("--nu is required for --dist t");
    if (n < 1) throw ParameterError("--n must be positive");
    const PlantedGraph planted = planted_k_component(p, k, intra_prob, {wmin, wmax}, seed);
    // Independent stream for the samples.
    const std::uint64_t sample_seed = seed ^ 0x9e3779b97f4a7c15ULL;
    const Matrix x = dist == "t" ? sample_student_t(planted.laplacian(), *nu, n, sample_seed)
                                 : sample_lgmrf(planted.laplacian(), n, sample_seed);

    std::vector<std::string> names;
    for (Index i = 0; i < p; ++i) names.push_back("x" + std::to_string(i + 1));

    GraphDocument doc;
    doc.nodes = names;
    doc.weights = planted.weights.values();
    doc.method = "planted";
    doc.config = {{"p", p}, {"k", k}, {"n", n}, {"dist", dist}, {"nu", nu ? ordered_json(*nu) : ordered_json(nullptr)},
                  {"seed", seed}, {"intra_prob", intra_prob}, {"weight_min", wmin}, {"weight_max", wmax}};
    doc.extra["labels"] = planted.partition.labels();
    write_graph_json(graph_path, doc);
    write_csv_table(data_path, names, x);
    if (!labels_path.empty()) {
      std::ofstream labels(labels_path, std::ios::binary);
      if (!labels) throw DataError("cannot write '" + labels_path + "'");
      labels << "node,label\n";
      for (Index i = 0; i < p; ++i) labels << names[static_cast<std::size_t>(i)] << ',' << planted.partition[i] << '\n';
    }
    out << "wrote " << graph_path << " and " << data_path << '\n';
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const std::string usage =
      "usage: fingraph <learn|metrics|simulate> [options]\n"
      "       fingraph <command> --help\n";
  if (args.empty()) {
    err << usage;
    return kExitError;
  }
  const std::vector<std::string> rest(args.begin() + 1, args.end());
  if (args[0] == "learn") return cmd_learn(rest, out, err);
  if (args[0] == "metrics") return cmd_metrics(rest, out, err);
  if (args[0] == "simulate") return cmd_simulate(rest, out, err);
  if (args[0] == "--help" || args[0] == "-h") {
    out << usage;
    return kExitOk;
  }
  if (args[0] == "--version") {
    out << "fingraph " << tool_version() << '\n';
    return kExitOk;
  }
  err << "unknown command '" << args[0] << "'\n" << usage;
  return kExitError;
}

}  // namespace fingraph::cli
