#pragma once

#include "fingraph/graph_ops.hpp"

#include <vector>

namespace fingraph {

inline constexpr double kEdgeThreshold = 1e-4;

/// One label in {1..t} per node.
class NodeLabels {
 public:
  explicit NodeLabels(std::vector<int> labels);

  const std::vector<int>& labels() const noexcept { return labels_; }
  int type_count() const noexcept { return types_; }
  Index size() const noexcept { return static_cast<Index>(labels_.size()); }
  int operator[](Index i) const { return labels_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<int> labels_;
  int types_ = 0;
};

/// Q = 1/(p(p-1)) sum_{i,j} (W_ij - d_i d_j / (p(p-1))) 1(t_i = t_j), summed
/// over all ordered pairs including i = j. This normalization differs from
/// the classical total-weight one.
double modularity(const SymmetricMatrix& w, const NodeLabels& labels);

struct FScore {
  double fscore = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

/// Binary edge F1 with the reference as ground truth. Both sets empty gives 1.
FScore edge_fscore(const WeightVector& estimated, const WeightVector& reference,
                   double threshold = kEdgeThreshold);

/// ||est - ref||_F / ||ref||_F, or ||est||_F when ref is zero.
double relative_error(const SymmetricMatrix& estimated, const SymmetricMatrix& reference);

struct EdgeDistribution {
  Index intra = 0;
  Index inter = 0;
};

EdgeDistribution edge_distribution(const SymmetricMatrix& w, const NodeLabels& labels,
                                   double threshold = kEdgeThreshold);

struct Partition {
  std::vector<Index> assignment;  // component id per node, numbered by first appearance
  Index count = 0;
};

/// Connected components of the graph with edges W_ij > threshold.
Partition components(const SymmetricMatrix& w, double threshold = kEdgeThreshold);

/// True when two partitions group nodes identically (ids may differ).
bool same_partition(const std::vector<Index>& a, const std::vector<Index>& b);

}  // namespace fingraph
