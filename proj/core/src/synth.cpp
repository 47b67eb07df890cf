#include "fingraph/synth.hpp"

#include "fingraph/error.hpp"
#include "fingraph/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace fingraph {

namespace {

void require_range(const WeightRange& range) {
  if (!(range.lo > 0.0) || !(range.hi >= range.lo) || !std::isfinite(range.hi)) {
    throw ParameterError("weight range must satisfy 0 < lo <= hi");
  }
}

double draw(std::mt19937_64& rng, const WeightRange& range) {
  if (range.lo == range.hi) return range.lo;
  return std::uniform_real_distribution<double>(range.lo, range.hi)(rng);
}

// Attaches each node after the first to a uniformly chosen earlier node.
void random_tree(const std::vector<Index>& nodes, Vector& w, Index p, const WeightRange& range,
                 std::mt19937_64& rng) {
  for (std::size_t a = 1; a < nodes.size(); ++a) {
    std::uniform_int_distribution<std::size_t> pick(0, a - 1);
    const Index u = nodes[a];
    const Index v = nodes[pick(rng)];
    w[edge_index(std::max(u, v), std::min(u, v), p)] = draw(rng, range);
  }
}

Matrix standard_normal(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix z(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) z(i, j) = normal(rng);
  }
  return z;
}

}  // namespace

PlantedGraph planted_k_component(Index p, Index k, double intra_prob, WeightRange weights,
                                 std::uint64_t seed) {
  if (k < 1 || (k > 1 && 2 * k > p) || p < 2) {
    throw ParameterError("planted graph needs p >= 2 and 1 <= k <= p/2");
  }
  if (!(intra_prob >= 0.0 && intra_prob <= 1.0)) {
    throw ParameterError("intra_prob must lie in [0, 1]");
  }
  require_range(weights);

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(intra_prob);
  Vector w = Vector::Zero(edge_count(p));
  std::vector<int> labels(static_cast<std::size_t>(p));

  Index next = 0;
  for (Index b = 0; b < k; ++b) {
    const Index size = p / k + (b < p % k ? 1 : 0);
    std::vector<Index> nodes;
    for (Index i = 0; i < size; ++i, ++next) {
      nodes.push_back(next);
      labels[static_cast<std::size_t>(next)] = static_cast<int>(b + 1);
    }
    random_tree(nodes, w, p, weights, rng);
    for (std::size_t a = 0; a < nodes.size(); ++a) {
      for (std::size_t c = a + 1; c < nodes.size(); ++c) {
        const Index e = edge_index(nodes[c], nodes[a], p);
        if (w[e] == 0.0 && coin(rng)) w[e] = draw(rng, weights);
      }
    }
  }
  return PlantedGraph{WeightVector(std::move(w), p), NodeLabels(std::move(labels)), seed};
}

WeightVector random_connected_graph(Index p, Index extra_edges, WeightRange weights,
                                    std::uint64_t seed) {
  if (p < 2) throw ParameterError("random graph needs p >= 2");
  if (extra_edges < 0 || extra_edges > edge_count(p) - (p - 1)) {
    throw ParameterError("too many extra edges for p=" + std::to_string(p));
  }
  require_range(weights);
  std::mt19937_64 rng(seed);
  std::vector<Index> order(static_cast<std::size_t>(p));
  for (Index i = 0; i < p; ++i) order[static_cast<std::size_t>(i)] = i;
  std::shuffle(order.begin(), order.end(), rng);

  Vector w = Vector::Zero(edge_count(p));
  random_tree(order, w, p, weights, rng);
  std::uniform_int_distribution<Index> pick(0, edge_count(p) - 1);
  for (Index added = 0; added < extra_edges;) {
    const Index e = pick(rng);
    if (w[e] != 0.0) continue;
    w[e] = draw(rng, weights);
    ++added;
  }
  return WeightVector(std::move(w), p);
}

WeightVector unit_degree_graph(Index p, int cycles, std::uint64_t seed) {
  if (p < 3) throw ParameterError("unit-degree graph needs p >= 3");
  if (cycles < 1) throw ParameterError("need at least one cycle");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mix(0.5, 1.0);
  std::vector<double> alpha(static_cast<std::size_t>(cycles));
  double total = 0.0;
  for (double& a : alpha) total += (a = mix(rng));

  std::vector<Index> order(static_cast<std::size_t>(p));
  for (Index i = 0; i < p; ++i) order[static_cast<std::size_t>(i)] = i;
  Vector w = Vector::Zero(edge_count(p));
  for (double a : alpha) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 0; i < order.size(); ++i) {
      const Index u = order[i];
      const Index v = order[(i + 1) % order.size()];
      w[edge_index(std::max(u, v), std::min(u, v), p)] += 0.5 * a / total;
    }
  }
  return WeightVector(std::move(w), p);
}

Matrix sample_lgmrf(const SymmetricMatrix& laplacian, Index n, std::uint64_t seed) {
  if (n < 1) throw ParameterError("sample count must be positive");
  const Matrix b = psd_sqrt_pinv(laplacian);
  std::mt19937_64 rng(seed);
  const Matrix z = standard_normal(b.cols(), n, rng);
  return (b * z).transpose();
}

Matrix sample_student_t(const SymmetricMatrix& laplacian, double nu, Index n, std::uint64_t seed) {
  if (!(nu > 2.0)) throw ParameterError("nu must be greater than 2");
  if (n < 1) throw ParameterError("sample count must be positive");
  const Matrix b = psd_sqrt_pinv(laplacian);
  std::mt19937_64 rng(seed);
  const Matrix z = standard_normal(b.cols(), n, rng);
  Matrix x = (b * z).transpose();
  std::chi_squared_distribution<double> chi2(nu);
  for (Index i = 0; i < n; ++i) x.row(i) /= std::sqrt(chi2(rng) / nu);
  return x;
}

}  // namespace fingraph
