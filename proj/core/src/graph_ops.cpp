#include "fingraph/graph_ops.hpp"

#include "fingraph/error.hpp"

#include <cmath>
#include <string>

namespace fingraph {

namespace {

void require_weight_length(Index size, Index p) {
  if (p < 2) {
    throw DimensionError("graph needs at least 2 nodes, got " + std::to_string(p));
  }
  if (size != edge_count(p)) {
    throw DimensionError("weight vector has length " + std::to_string(size) + ", expected " +
                         std::to_string(edge_count(p)) + " for p=" + std::to_string(p));
  }
}

}  // namespace

Index edge_count(Index p) { return p * (p - 1) / 2; }

Index edge_index(Index i, Index j, Index p) {
  if (i <= j || i >= p || j < 0) {
    throw DimensionError("edge index requires 0 <= j < i < p");
  }
  return i - j - 1 + j * (2 * p - j - 1) / 2;
}

std::pair<Index, Index> edge_nodes(Index k, Index p) {
  if (k < 0 || k >= edge_count(p)) {
    throw DimensionError("edge position " + std::to_string(k) + " out of range");
  }
  Index j = 0;
  Index column = p - 1;
  while (k >= column) {
    k -= column;
    ++j;
    --column;
  }
  return {j + 1 + k, j};
}

Index nodes_for_edge_count(Index m) {
  const auto p = static_cast<Index>(std::llround((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(m))) / 2.0));
  if (p < 2 || edge_count(p) != m) {
    throw DimensionError(std::to_string(m) + " is not a valid edge count p(p-1)/2");
  }
  return p;
}

WeightVector::WeightVector(Vector values, Index p) : values_(std::move(values)), p_(p) {
  require_weight_length(values_.size(), p_);
  for (Index k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k]) || values_[k] < 0.0) {
      throw ParameterError("edge weight " + std::to_string(k) + " must be finite and nonnegative");
    }
  }
}

WeightVector WeightVector::zeros(Index p) { return WeightVector(Vector::Zero(edge_count(p)), p); }

SymmetricMatrix::SymmetricMatrix(const Matrix& m, double tolerance) {
  if (m.rows() != m.cols()) {
    throw DimensionError("symmetric matrix must be square, got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
  if (!m.allFinite()) {
    throw DataError("symmetric matrix has non-finite entries");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asymmetry = m.size() == 0 ? 0.0 : (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asymmetry > tolerance * scale) {
    throw DataError("matrix is not symmetric (max |M - M^T| = " + std::to_string(asymmetry) + ")");
  }
  m_ = 0.5 * (m + m.transpose());
}

SymmetricMatrix SymmetricMatrix::identity(Index p) { return SymmetricMatrix(Matrix::Identity(p, p)); }

SymmetricMatrix SymmetricMatrix::zero(Index p) { return SymmetricMatrix(Matrix::Zero(p, p)); }

Matrix laplacian(const Eigen::Ref<const Vector>& w, Index p) {
  require_weight_length(w.size(), p);
  Matrix out = Matrix::Zero(p, p);
  Index k = 0;
  for (Index j = 0; j < p; ++j) {
    for (Index i = j + 1; i < p; ++i, ++k) {
      out(i, j) = -w[k];
      out(j, i) = -w[k];
      out(i, i) += w[k];
      out(j, j) += w[k];
    }
  }
  return out;
}

Matrix adjacency(const Eigen::Ref<const Vector>& w, Index p) {
  require_weight_length(w.size(), p);
  Matrix out = Matrix::Zero(p, p);
  Index k = 0;
  for (Index j = 0; j < p; ++j) {
    for (Index i = j + 1; i < p; ++i, ++k) {
      out(i, j) = w[k];
      out(j, i) = w[k];
    }
  }
  return out;
}

Vector degrees(const Eigen::Ref<const Vector>& w, Index p) {
  require_weight_length(w.size(), p);
  Vector out = Vector::Zero(p);
  Index k = 0;
  for (Index j = 0; j < p; ++j) {
    for (Index i = j + 1; i < p; ++i, ++k) {
      out[i] += w[k];
      out[j] += w[k];
    }
  }
  return out;
}

Vector laplacian_adjoint(const Eigen::Ref<const Matrix>& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("Laplacian adjoint needs a square matrix");
  }
  const Index p = m.rows();
  Vector out(edge_count(p));
  Index k = 0;
  for (Index j = 0; j < p; ++j) {
    for (Index i = j + 1; i < p; ++i, ++k) {
      out[k] = m(i, i) - m(i, j) - m(j, i) + m(j, j);
    }
  }
  return out;
}

Vector degree_adjoint(const Eigen::Ref<const Vector>& y) {
  const Index p = y.size();
  Vector out(edge_count(p));
  Index k = 0;
  for (Index j = 0; j < p; ++j) {
    for (Index i = j + 1; i < p; ++i, ++k) {
      out[k] = y[i] + y[j];
    }
  }
  return out;
}

SymmetricMatrix laplacian_op(const WeightVector& w) {
  return SymmetricMatrix(laplacian(w.values(), w.nodes()));
}

SymmetricMatrix adjacency_op(const WeightVector& w) {
  return SymmetricMatrix(adjacency(w.values(), w.nodes()));
}

Vector degree_op(const WeightVector& w) { return degrees(w.values(), w.nodes()); }

Vector laplacian_adj(const SymmetricMatrix& m) { return laplacian_adjoint(m.matrix()); }

Vector degree_adj(const Vector& y) { return degree_adjoint(y); }

double mm_step_denominator(Index p, double rho) {
  if (p < 2) {
    throw ParameterError("step denominator needs p >= 2");
  }
  if (!(rho > 0.0)) {
    throw ParameterError("rho must be positive");
  }
  return 2.0 * rho * static_cast<double>(2 * p - 1);
}

}  // namespace fingraph
