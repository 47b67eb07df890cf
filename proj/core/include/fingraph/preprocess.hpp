#pragma once

#include "fingraph/graph_ops.hpp"

#include <string>
#include <vector>

namespace fingraph {

/// n x p matrix of returns with asset names and optional timestamps.
class ReturnsMatrix {
 public:
  ReturnsMatrix(Matrix values, std::vector<std::string> names = {},
                std::vector<std::string> timestamps = {});

  const Matrix& values() const noexcept { return values_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<std::string>& timestamps() const noexcept { return timestamps_; }
  Index observations() const noexcept { return values_.rows(); }
  Index assets() const noexcept { return values_.cols(); }

 private:
  Matrix values_;
  std::vector<std::string> names_;
  std::vector<std::string> timestamps_;
};

/// X_ij = log P_ij - log P_{i-1,j}. Timestamps, if given, are those of the
/// later price in each pair.
ReturnsMatrix log_returns(const Matrix& prices, std::vector<std::string> names = {},
                          std::vector<std::string> timestamps = {});

enum class SimilarityKind { Covariance, Correlation, NormalizedMutualInformation };

std::string to_string(SimilarityKind kind);
SimilarityKind parse_similarity(const std::string& name);

struct SimilaritySpec {
  SimilarityKind kind = SimilarityKind::Correlation;
  bool market_removed = false;
  bool scaled = false;  // scale columns first; correlation and NMI always do
};

/// NMI off-diagonals use S_ij^2 clipped to this value below 1.
inline constexpr double kNmiClip = 1.0 - 1e-12;

/// Covariance (column-centred, denominator n), correlation, or normalized
/// mutual information -0.5 log(1 - corr^2) with unit diagonal.
SymmetricMatrix similarity(const ReturnsMatrix& x, const SimilaritySpec& spec);

/// Elementwise -0.5 log(1 - C_ij^2) for i != j (C_ij^2 clipped at kNmiClip),
/// unit diagonal. C is a correlation matrix.
SymmetricMatrix normalized_mutual_information(const SymmetricMatrix& corr);

/// Zeroes the largest eigenvalue of S and reconstructs.
SymmetricMatrix remove_market(const SymmetricMatrix& s);

/// Projects each observation onto the complement of the top eigenvector of
/// X^T X / n, the data-space counterpart of remove_market.
Matrix remove_market_factor(const Matrix& x);

/// Divides each column by its standard deviation (denominator n).
ReturnsMatrix scale_columns(const ReturnsMatrix& x);
Matrix scale_columns(const Matrix& x);

/// Column variances with denominator n.
Vector column_variances(const Matrix& x);

}  // namespace fingraph
