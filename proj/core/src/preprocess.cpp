#include "fingraph/preprocess.hpp"

#include "fingraph/error.hpp"
#include "fingraph/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fingraph {

ReturnsMatrix::ReturnsMatrix(Matrix values, std::vector<std::string> names,
                             std::vector<std::string> timestamps)
    : values_(std::move(values)), names_(std::move(names)), timestamps_(std::move(timestamps)) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw DimensionError("returns matrix is empty");
  }
  for (Index i = 0; i < values_.rows(); ++i) {
    for (Index j = 0; j < values_.cols(); ++j) {
      if (!std::isfinite(values_(i, j))) {
        throw DataError("non-finite return at row " + std::to_string(i + 1) + ", column " +
                        std::to_string(j + 1));
      }
    }
  }
  if (names_.empty()) {
    for (Index j = 0; j < values_.cols(); ++j) names_.push_back("x" + std::to_string(j + 1));
  }
  if (static_cast<Index>(names_.size()) != values_.cols()) {
    throw DimensionError("expected " + std::to_string(values_.cols()) + " asset names, got " +
                         std::to_string(names_.size()));
  }
  if (!timestamps_.empty() && static_cast<Index>(timestamps_.size()) != values_.rows()) {
    throw DimensionError("timestamp count does not match observation count");
  }
}

ReturnsMatrix log_returns(const Matrix& prices, std::vector<std::string> names,
                          std::vector<std::string> timestamps) {
  if (prices.rows() < 2) throw DimensionError("log returns need at least two price rows");
  for (Index i = 0; i < prices.rows(); ++i) {
    for (Index j = 0; j < prices.cols(); ++j) {
      if (!(prices(i, j) > 0.0) || !std::isfinite(prices(i, j))) {
        throw DataError("nonpositive or non-finite price at row " + std::to_string(i + 1) +
                        ", column " + std::to_string(j + 1));
      }
    }
  }
  const Matrix logs = prices.array().log().matrix();
  Matrix out = logs.bottomRows(prices.rows() - 1) - logs.topRows(prices.rows() - 1);
  if (!timestamps.empty()) {
    if (static_cast<Index>(timestamps.size()) != prices.rows()) {
      throw DimensionError("timestamp count does not match price rows");
    }
    timestamps.erase(timestamps.begin());
  }
  return ReturnsMatrix(std::move(out), std::move(names), std::move(timestamps));
}

std::string to_string(SimilarityKind kind) {
  switch (kind) {
    case SimilarityKind::Covariance: return "covariance";
    case SimilarityKind::Correlation: return "correlation";
    case SimilarityKind::NormalizedMutualInformation: return "nmi";
  }
  return "unknown";
}

SimilarityKind parse_similarity(const std::string& name) {
  if (name == "covariance") return SimilarityKind::Covariance;
  if (name == "correlation") return SimilarityKind::Correlation;
  if (name == "nmi") return SimilarityKind::NormalizedMutualInformation;
  throw ParameterError("unknown similarity '" + name + "' (expected correlation, covariance or nmi)");
}

Vector column_variances(const Matrix& x) {
  const Vector mean = x.colwise().mean();
  return (x.rowwise() - mean.transpose()).colwise().squaredNorm() / static_cast<double>(x.rows());
}

Matrix scale_columns(const Matrix& x) {
  const Vector var = column_variances(x);
  for (Index j = 0; j < var.size(); ++j) {
    if (!(var[j] > 0.0)) {
      throw DataError("column " + std::to_string(j + 1) + " has zero variance");
    }
  }
  return x * var.cwiseSqrt().cwiseInverse().asDiagonal();
}

ReturnsMatrix scale_columns(const ReturnsMatrix& x) {
  return ReturnsMatrix(scale_columns(x.values()), x.names(), x.timestamps());
}

namespace {

Matrix covariance(const Matrix& x) {
  const Vector mean = x.colwise().mean();
  const Matrix centred = x.rowwise() - mean.transpose();
  Matrix s = centred.transpose() * centred / static_cast<double>(x.rows());
  return 0.5 * (s + s.transpose());
}

Matrix unit_diagonal(const Matrix& s) {
  const Vector diag = s.diagonal();
  for (Index j = 0; j < diag.size(); ++j) {
    if (!(diag[j] > 0.0)) throw DataError("column " + std::to_string(j + 1) + " has zero variance");
  }
  const Vector inv = diag.cwiseSqrt().cwiseInverse();
  Matrix out = inv.asDiagonal() * s * inv.asDiagonal();
  out.diagonal().setOnes();
  return out;
}

}  // namespace

SymmetricMatrix similarity(const ReturnsMatrix& x, const SimilaritySpec& spec) {
  if (x.observations() < 2 || x.assets() < 2) {
    throw DimensionError("similarity needs n >= 2 observations and p >= 2 assets");
  }
  const bool scaled = spec.scaled || spec.kind != SimilarityKind::Covariance;
  Matrix s = covariance(scaled ? scale_columns(x.values()) : x.values());
  if (scaled) s = unit_diagonal(s);
  if (spec.market_removed) s = remove_market(SymmetricMatrix(s)).matrix();
  if (spec.kind != SimilarityKind::NormalizedMutualInformation) return SymmetricMatrix(s);

  return normalized_mutual_information(SymmetricMatrix(spec.market_removed ? unit_diagonal(s) : s));
}

SymmetricMatrix normalized_mutual_information(const SymmetricMatrix& corr) {
  const Index p = corr.size();
  Matrix out = Matrix::Ones(p, p);
  for (Index j = 0; j < p; ++j) {
    for (Index i = j + 1; i < p; ++i) {
      const double sq = std::min(corr(i, j) * corr(i, j), kNmiClip);
      out(i, j) = out(j, i) = -0.5 * std::log1p(-sq);
    }
  }
  return SymmetricMatrix(out);
}

SymmetricMatrix remove_market(const SymmetricMatrix& s) {
  const EigenPair eig = eigen_decompose(s);
  Vector lambda = eig.eigenvalues;
  lambda[lambda.size() - 1] = 0.0;
  Matrix out = eig.eigenvectors * lambda.asDiagonal() * eig.eigenvectors.transpose();
  return SymmetricMatrix(0.5 * (out + out.transpose()));
}

Matrix remove_market_factor(const Matrix& x) {
  const Matrix second = x.transpose() * x / static_cast<double>(x.rows());
  const EigenPair eig = eigen_decompose(SymmetricMatrix(0.5 * (second + second.transpose())));
  const Vector top = eig.eigenvectors.col(eig.eigenvectors.cols() - 1);
  return x - (x * top) * top.transpose();
}

}  // namespace fingraph
