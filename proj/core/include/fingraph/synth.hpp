#pragma once

#include "fingraph/graph_ops.hpp"
#include "fingraph/metrics.hpp"

#include <cstdint>

namespace fingraph {

struct WeightRange {
  double lo = 1.0;
  double hi = 2.0;
};

struct PlantedGraph {
  WeightVector weights;
  NodeLabels partition;
  std::uint64_t seed = 0;

  SymmetricMatrix laplacian() const { return laplacian_op(weights); }
  SymmetricMatrix adjacency() const { return adjacency_op(weights); }
};

/// k blocks of near-equal size (the first p mod k blocks get one extra node).
/// Each block gets a random spanning tree plus every other intra-block pair
/// with probability intra_prob; weights are uniform on the range.
PlantedGraph planted_k_component(Index p, Index k, double intra_prob, WeightRange weights,
                                 std::uint64_t seed);

/// Random spanning tree on p nodes plus `extra_edges` distinct extra edges.
WeightVector random_connected_graph(Index p, Index extra_edges, WeightRange weights,
                                    std::uint64_t seed);

/// Convex combination of `cycles` random Hamiltonian cycles with 1/2 per
/// cycle edge, so every node has degree exactly 1. Mixing weights are drawn
/// uniformly on [0.5, 1] and normalized. Needs p >= 3.
WeightVector unit_degree_graph(Index p, int cycles, std::uint64_t seed);

/// n rows x = B z with z standard normal and B B^T = L^+.
Matrix sample_lgmrf(const SymmetricMatrix& laplacian, Index n, std::uint64_t seed);

/// n rows x = g / sqrt(u / nu) with g ~ LGMRF(L) and u ~ chi-square(nu).
Matrix sample_student_t(const SymmetricMatrix& laplacian, double nu, Index n, std::uint64_t seed);

}  // namespace fingraph
