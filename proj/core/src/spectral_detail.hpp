#pragma once

#include "fingraph/spectral.hpp"

namespace fingraph::detail {

struct ProxResult {
  Matrix value;
  double log_det = 0.0;  // sum of logs of the mapped eigenvalues
};

// Eigenvalue map of the log-det prox, stable for large negative gamma.
double prox_eigenvalue(double gamma, double rho);

// Prox on the top (p - drop) eigenvalues of m; m must be symmetric.
ProxResult apply_logdet_prox(const Matrix& m, double rho, Index drop);

EigenPair eigen_decompose_raw(const Matrix& m);

}  // namespace fingraph::detail
