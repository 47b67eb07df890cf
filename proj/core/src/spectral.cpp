#include "fingraph/spectral.hpp"

#include "fingraph/error.hpp"
#include "spectral_detail.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace fingraph {

namespace detail {

double prox_eigenvalue(double gamma, double rho) {
  const double root = std::sqrt(gamma * gamma + 4.0 * rho);
  if (gamma >= 0.0) {
    return (gamma + root) / (2.0 * rho);
  }
  // Rationalized form avoids cancellation in gamma + root.
  return 2.0 / (root - gamma);
}

EigenPair eigen_decompose_raw(const Matrix& m) {
  if (!m.allFinite()) {
    throw NumericalError("eigendecomposition input has non-finite entries");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("symmetric eigendecomposition failed for a " + std::to_string(m.rows()) +
                         "x" + std::to_string(m.cols()) + " matrix");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ProxResult apply_logdet_prox(const Matrix& m, double rho, Index drop) {
  if (!(rho > 0.0)) {
    throw ParameterError("rho must be positive");
  }
  const Index p = m.rows();
  if (drop < 0 || drop >= p) {
    throw ParameterError("rank restriction k must satisfy 0 <= k < p");
  }
  const EigenPair eig = eigen_decompose_raw(m);
  ProxResult out;
  const Index keep = p - drop;
  Vector mapped(keep);
  for (Index i = 0; i < keep; ++i) {
    mapped[i] = prox_eigenvalue(eig.eigenvalues[drop + i], rho);
    out.log_det += std::log(mapped[i]);
  }
  const auto u = eig.eigenvectors.rightCols(keep);
  out.value = u * mapped.asDiagonal() * u.transpose();
  out.value = 0.5 * (out.value + out.value.transpose());
  return out;
}

}  // namespace detail

EigenPair eigen_decompose(const SymmetricMatrix& m) { return detail::eigen_decompose_raw(m.matrix()); }

SymmetricMatrix prox_logdet(const SymmetricMatrix& m, double rho) {
  return SymmetricMatrix(detail::apply_logdet_prox(m.matrix(), rho, 0).value);
}

SymmetricMatrix prox_logdet_rank(const SymmetricMatrix& m, double rho, Index k) {
  if (k < 0 || k >= m.size()) {
    throw ParameterError("prox_logdet_rank needs 0 <= k < p, got k=" + std::to_string(k));
  }
  return SymmetricMatrix(detail::apply_logdet_prox(m.matrix(), rho, k).value);
}

SubspaceMatrix::SubspaceMatrix(Matrix columns, double tolerance) : v_(std::move(columns)) {
  if (v_.cols() > v_.rows()) {
    throw DimensionError("subspace has more columns than rows");
  }
  const Matrix gram = v_.transpose() * v_;
  const double err = (gram - Matrix::Identity(v_.cols(), v_.cols())).cwiseAbs().maxCoeff();
  if (v_.cols() > 0 && err > tolerance) {
    throw NumericalError("subspace columns are not orthonormal (error " + std::to_string(err) + ")");
  }
}

SubspaceMatrix fan_subspace(const SymmetricMatrix& l, Index k) {
  if (k < 1 || k >= l.size()) {
    throw ParameterError("fan_subspace needs 1 <= k < p");
  }
  const EigenPair eig = eigen_decompose(l);
  return SubspaceMatrix(eig.eigenvectors.leftCols(k));
}

namespace {

// Eigenpairs whose eigenvalue exceeds rank_tol * max |lambda|.
Index first_significant(const Vector& eigenvalues, double rank_tol) {
  const double scale = eigenvalues.cwiseAbs().maxCoeff();
  Index first = 0;
  while (first < eigenvalues.size() && eigenvalues[first] <= rank_tol * scale) {
    ++first;
  }
  return first;
}

}  // namespace

Matrix psd_sqrt_pinv(const SymmetricMatrix& m, double rank_tol) {
  const EigenPair eig = eigen_decompose(m);
  const Index first = first_significant(eig.eigenvalues, rank_tol);
  const Index r = m.size() - first;
  if (r == 0 || eig.eigenvalues.cwiseAbs().maxCoeff() == 0.0) {
    throw DataError("matrix has no eigenvalue above the rank tolerance");
  }
  const Vector inv_sqrt = eig.eigenvalues.tail(r).cwiseSqrt().cwiseInverse();
  return eig.eigenvectors.rightCols(r) * inv_sqrt.asDiagonal();
}

Matrix pseudo_inverse(const SymmetricMatrix& m, double rank_tol) {
  const EigenPair eig = eigen_decompose(m);
  const double scale = eig.eigenvalues.cwiseAbs().maxCoeff();
  Vector inv = Vector::Zero(m.size());
  for (Index i = 0; i < m.size(); ++i) {
    if (std::abs(eig.eigenvalues[i]) > rank_tol * scale) {
      inv[i] = 1.0 / eig.eigenvalues[i];
    }
  }
  Matrix out = eig.eigenvectors * inv.asDiagonal() * eig.eigenvectors.transpose();
  return 0.5 * (out + out.transpose());
}

Index nullity(const SymmetricMatrix& m, double rank_tol) {
  const EigenPair eig = eigen_decompose(m);
  const double scale = eig.eigenvalues.cwiseAbs().maxCoeff();
  Index count = 0;
  for (Index i = 0; i < m.size(); ++i) {
    if (eig.eigenvalues[i] <= rank_tol * scale) ++count;
  }
  return count;
}

SpectralDiagnostics spectral_diagnostics(const SymmetricMatrix& m, double rank_tol) {
  const EigenPair eig = eigen_decompose(m);
  const Index p = m.size();
  SpectralDiagnostics out;
  out.eigenvalues = eig.eigenvalues.reverse();
  const double lmax = eig.eigenvalues[p - 1];
  const double lmin = eig.eigenvalues[0];
  const double scale = eig.eigenvalues.cwiseAbs().maxCoeff();
  out.singular = lmin <= rank_tol * scale;
  out.condition_number = out.singular ? std::numeric_limits<double>::infinity() : lmax / lmin;

  out.eigenvector_variances.resize(p);
  for (Index c = 0; c < p; ++c) {
    const auto v = eig.eigenvectors.col(p - 1 - c);
    if (p < 2) {
      out.eigenvector_variances[c] = 0.0;
      continue;
    }
    const double mean = v.mean();
    out.eigenvector_variances[c] = (v.array() - mean).square().sum() / static_cast<double>(p - 1);
  }
  return out;
}

}  // namespace fingraph
