#include "fingraph/metrics.hpp"

#include "fingraph/error.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <string>

namespace fingraph {

NodeLabels::NodeLabels(std::vector<int> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw DimensionError("labels are empty");
  const int lo = *std::min_element(labels_.begin(), labels_.end());
  types_ = *std::max_element(labels_.begin(), labels_.end());
  if (lo < 1) throw ParameterError("labels must be positive integers");
}

namespace {

void require_labels(const SymmetricMatrix& w, const NodeLabels& labels) {
  if (labels.size() != w.size()) {
    throw DimensionError("label count " + std::to_string(labels.size()) + " does not match " +
                         std::to_string(w.size()) + " nodes");
  }
}

}  // namespace

double modularity(const SymmetricMatrix& w, const NodeLabels& labels) {
  require_labels(w, labels);
  const Index p = w.size();
  const double norm = static_cast<double>(p) * static_cast<double>(p - 1);
  const Vector d = w.matrix().rowwise().sum();
  // Weight and expected-weight sums kept apart, then combined once.
  double within = 0.0;
  double expected = 0.0;
  for (Index i = 0; i < p; ++i) {
    for (Index j = 0; j < p; ++j) {
      if (labels[i] != labels[j]) continue;
      within += w(i, j);
      expected += d[i] * d[j];
    }
  }
  return (within - expected / norm) / norm;
}

FScore edge_fscore(const WeightVector& estimated, const WeightVector& reference, double threshold) {
  if (estimated.nodes() != reference.nodes()) {
    throw DimensionError("f-score needs graphs with the same node count");
  }
  Index tp = 0, fp = 0, fn = 0;
  for (Index k = 0; k < estimated.size(); ++k) {
    const bool e = estimated[k] > threshold;
    const bool r = reference[k] > threshold;
    tp += e && r;
    fp += e && !r;
    fn += !e && r;
  }
  if (tp + fp + fn == 0) return {1.0, 1.0, 1.0};
  FScore out;
  out.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  out.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  out.fscore = 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
  return out;
}

double relative_error(const SymmetricMatrix& estimated, const SymmetricMatrix& reference) {
  if (estimated.size() != reference.size()) {
    throw DimensionError("relative error needs matrices of the same size");
  }
  const double ref = reference.matrix().norm();
  const double diff = (estimated.matrix() - reference.matrix()).norm();
  return ref > 0.0 ? diff / ref : diff;
}

EdgeDistribution edge_distribution(const SymmetricMatrix& w, const NodeLabels& labels,
                                   double threshold) {
  require_labels(w, labels);
  EdgeDistribution out;
  for (Index j = 0; j < w.size(); ++j) {
    for (Index i = j + 1; i < w.size(); ++i) {
      if (w(i, j) <= threshold) continue;
      if (labels[i] == labels[j]) {
        ++out.intra;
      } else {
        ++out.inter;
      }
    }
  }
  return out;
}

Partition components(const SymmetricMatrix& w, double threshold) {
  const Index p = w.size();
  Partition out;
  out.assignment.assign(static_cast<std::size_t>(p), -1);
  for (Index start = 0; start < p; ++start) {
    if (out.assignment[static_cast<std::size_t>(start)] >= 0) continue;
    std::queue<Index> frontier;
    frontier.push(start);
    out.assignment[static_cast<std::size_t>(start)] = out.count;
    while (!frontier.empty()) {
      const Index u = frontier.front();
      frontier.pop();
      for (Index v = 0; v < p; ++v) {
        if (v != u && w(u, v) > threshold && out.assignment[static_cast<std::size_t>(v)] < 0) {
          out.assignment[static_cast<std::size_t>(v)] = out.count;
          frontier.push(v);
        }
      }
    }
    ++out.count;
  }
  return out;
}

bool same_partition(const std::vector<Index>& a, const std::vector<Index>& b) {
  if (a.size() != b.size()) return false;
  std::map<Index, Index> forward, backward;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto f = forward.emplace(a[i], b[i]).first;
    const auto g = backward.emplace(b[i], a[i]).first;
    if (f->second != b[i] || g->second != a[i]) return false;
  }
  return true;
}

}  // namespace fingraph
