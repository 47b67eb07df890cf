#pragma once

#include "fingraph/graph_ops.hpp"

namespace fingraph {

/// Symmetric eigendecomposition with eigenvalues in ascending order.
struct EigenPair {
  Vector eigenvalues;
  Matrix eigenvectors;
};

EigenPair eigen_decompose(const SymmetricMatrix& m);

/// Minimizer of -log det(Omega) + (rho/2) ||Omega - M / rho||_F^2; every
/// eigenvalue gamma of M maps to (gamma + sqrt(gamma^2 + 4 rho)) / (2 rho).
SymmetricMatrix prox_logdet(const SymmetricMatrix& m, double rho);

/// Same eigenvalue map restricted to the p - k largest eigenvalues of M; the
/// k smallest are set to zero, so the result has rank p - k. k = 0 is the
/// unrestricted prox.
SymmetricMatrix prox_logdet_rank(const SymmetricMatrix& m, double rho, Index k);

/// p x k matrix with orthonormal columns.
class SubspaceMatrix {
 public:
  explicit SubspaceMatrix(Matrix columns, double tolerance = 1e-8);

  const Matrix& columns() const noexcept { return v_; }
  Index rows() const noexcept { return v_.rows(); }
  Index cols() const noexcept { return v_.cols(); }
  /// V V^T.
  Matrix projector() const { return v_ * v_.transpose(); }

 private:
  Matrix v_;
};

/// Eigenvectors of the k smallest eigenvalues of L.
SubspaceMatrix fan_subspace(const SymmetricMatrix& l, Index k);

/// B = U_+ diag(lambda_+^{-1/2}) over eigenvalues above rank_tol * lambda_max,
/// so that B B^T is the pseudo-inverse of M.
Matrix psd_sqrt_pinv(const SymmetricMatrix& m, double rank_tol = 1e-9);

/// Moore-Penrose pseudo-inverse of a symmetric matrix.
Matrix pseudo_inverse(const SymmetricMatrix& m, double rank_tol = 1e-9);

/// Number of eigenvalues at or below rank_tol * max(|lambda|).
Index nullity(const SymmetricMatrix& m, double rank_tol = 1e-9);

struct SpectralDiagnostics {
  double condition_number = 0.0;  // lambda_max / lambda_min, +inf when singular
  bool singular = false;
  Vector eigenvalues;             // descending
  Vector eigenvector_variances;   // same order, denominator p - 1
};

SpectralDiagnostics spectral_diagnostics(const SymmetricMatrix& m, double rank_tol = 1e-9);

}  // namespace fingraph
