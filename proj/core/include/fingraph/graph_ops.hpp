#pragma once

#include <Eigen/Dense>

#include <utility>

namespace fingraph {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Number of candidate edges of an undirected graph on p nodes, p(p-1)/2.
Index edge_count(Index p);

/// Linear position of the edge {i, j} (0-based, i > j) in the column-major
/// strict lower triangle. In 1-based terms this is i - j + (j-1)(2p-j)/2.
Index edge_index(Index i, Index j, Index p);

/// Inverse of edge_index: returns (i, j) with i > j.
std::pair<Index, Index> edge_nodes(Index k, Index p);

/// Recovers p from m = p(p-1)/2; throws DimensionError if m is not triangular.
Index nodes_for_edge_count(Index m);

/// Nonnegative edge weights of a graph on p >= 2 nodes.
class WeightVector {
 public:
  WeightVector(Vector values, Index p);

  static WeightVector zeros(Index p);

  const Vector& values() const noexcept { return values_; }
  Index nodes() const noexcept { return p_; }
  Index size() const noexcept { return values_.size(); }
  double operator[](Index k) const { return values_[k]; }

 private:
  Vector values_;
  Index p_;
};

/// Dense symmetric matrix. Construction accepts floating-point drift of up
/// to tolerance * max(1, max|M|) and stores the symmetrized (M + M^T)/2.
class SymmetricMatrix {
 public:
  static constexpr double kDefaultTolerance = 1e-9;

  explicit SymmetricMatrix(const Matrix& m, double tolerance = kDefaultTolerance);

  static SymmetricMatrix identity(Index p);
  static SymmetricMatrix zero(Index p);

  const Matrix& matrix() const noexcept { return m_; }
  Index size() const noexcept { return m_.rows(); }
  double operator()(Index i, Index j) const { return m_(i, j); }

 private:
  Matrix m_;
};

// Linear operators on raw vectors. These accept any real input (negative
// entries included) so they can be used inside gradients and adjoint checks.

/// Laplacian operator: off-diagonal (i, j) = -w_k, diagonal = weighted degree.
Matrix laplacian(const Eigen::Ref<const Vector>& w, Index p);
Matrix adjacency(const Eigen::Ref<const Vector>& w, Index p);
Vector degrees(const Eigen::Ref<const Vector>& w, Index p);
/// (L* M)_k = M_ii - M_ij - M_ji + M_jj.
Vector laplacian_adjoint(const Eigen::Ref<const Matrix>& m);
/// (d* y)_k = y_i + y_j.
Vector degree_adjoint(const Eigen::Ref<const Vector>& y);

SymmetricMatrix laplacian_op(const WeightVector& w);
SymmetricMatrix adjacency_op(const WeightVector& w);
Vector degree_op(const WeightVector& w);
Vector laplacian_adj(const SymmetricMatrix& m);
Vector degree_adj(const Vector& y);

/// Denominator of the projected-gradient weight step, rho * lambda_max(d*d + L*L)
/// where lambda_max = 2(2p - 1).
double mm_step_denominator(Index p, double rho);

}  // namespace fingraph
