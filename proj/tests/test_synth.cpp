#include <fingraph/error.hpp>
#include <fingraph/spectral.hpp>
#include <fingraph/synth.hpp>

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "support/oracles.hpp"

using namespace fingraph;

namespace {

Index zero_eigenvalues(const Matrix& l) {
  const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(l).eigenvalues();
  return (ev.array().abs() < 1e-9).count();
}

}  // namespace

TEST(PlantedKComponent, BlocksOfTwoGivePerfectMatching) {
  const PlantedGraph g = planted_k_component(8, 4, 1.0, {}, 1);
  EXPECT_EQ((g.weights.values().array() > 0).count(), 4);
  EXPECT_EQ(zero_eigenvalues(g.laplacian().matrix()), 4);
}

TEST(PlantedKComponent, SingleBlockWithFullProbabilityIsComplete) {
  const PlantedGraph g = planted_k_component(6, 1, 1.0, {}, 2);
  EXPECT_EQ((g.weights.values().array() > 0).count(), 15);
  EXPECT_EQ(zero_eigenvalues(g.laplacian().matrix()), 1);
}

TEST(PlantedKComponent, ThreeBlocksHaveNullityThree) {
  const PlantedGraph g = planted_k_component(30, 3, 0.2, {}, 3);
  EXPECT_EQ(zero_eigenvalues(g.laplacian().matrix()), 3);
  EXPECT_EQ(g.partition.type_count(), 3);
  EXPECT_GE(g.weights.values().maxCoeff(), 1.0);
  for (Index k = 0; k < g.weights.size(); ++k) {
    const double v = g.weights[k];
    if (v > 0) {
      EXPECT_GE(v, 1.0);
      EXPECT_LE(v, 2.0);
      const auto [i, j] = edge_nodes(k, 30);
      EXPECT_EQ(g.partition[i], g.partition[j]);
    }
  }
}

TEST(PlantedKComponent, DeterministicAndValidated) {
  EXPECT_EQ(planted_k_component(20, 2, 0.3, {}, 9).weights.values(),
            planted_k_component(20, 2, 0.3, {}, 9).weights.values());
  EXPECT_THROW(planted_k_component(5, 3, 0.5, {}, 1), ParameterError);
  EXPECT_THROW(planted_k_component(10, 2, 1.5, {}, 1), ParameterError);
}

TEST(RandomConnectedGraph, ConnectedWithRequestedEdgeCount) {
  const WeightVector w = random_connected_graph(15, 6, {0.5, 1.0}, 4);
  EXPECT_EQ((w.values().array() > 0).count(), 14 + 6);
  EXPECT_EQ(zero_eigenvalues(laplacian_op(w).matrix()), 1);
}

TEST(UnitDegreeGraph, DegreesAreExactlyOne) {
  const WeightVector w = unit_degree_graph(11, 3, 5);
  EXPECT_LE((degree_op(w) - Vector::Ones(11)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(zero_eigenvalues(laplacian_op(w).matrix()), 1);
}

TEST(SampleLgmrf, UnitEdgeCovariance) {
  const WeightVector w(Vector::Ones(1), 2);
  const Matrix x = sample_lgmrf(laplacian_op(w), 100000, 6);
  const Matrix cov = oracle::second_moment(x, true);
  Matrix expected(2, 2);
  expected << 0.25, -0.25, -0.25, 0.25;
  EXPECT_LE((cov - expected).norm() / expected.norm(), 0.05);
  const Vector mean = x.colwise().mean();
  for (Index j = 0; j < 2; ++j) EXPECT_LE(std::abs(mean[j]), 5.0 * 0.5 / std::sqrt(100000.0));
}

TEST(SampleLgmrf, RowsAreOrthogonalToOnes) {
  const PlantedGraph g = planted_k_component(12, 1, 0.3, {}, 7);
  const Matrix x = sample_lgmrf(g.laplacian(), 500, 8);
  EXPECT_LE((x * Vector::Ones(12)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(SampleStudentT, LargeNuMatchesGaussianCovariance) {
  const WeightVector w = unit_degree_graph(5, 2, 9);
  const Matrix pinv = pseudo_inverse(laplacian_op(w));
  const Matrix x = sample_student_t(laplacian_op(w), 1e6, 100000, 10);
  EXPECT_LE((oracle::second_moment(x, false) - pinv).norm() / pinv.norm(), 0.03);
}

TEST(SampleStudentT, HeavyTailsAtNuFour) {
  const WeightVector w(Vector::Ones(1), 2);
  const Matrix x = sample_student_t(laplacian_op(w), 4.0, 100000, 11);
  const Vector c = x.col(0).array() - x.col(0).mean();
  const double m2 = c.squaredNorm() / c.size();
  const double m4 = c.array().pow(4).sum() / c.size();
  EXPECT_GT(m4 / (m2 * m2) - 3.0, 0.0);
}

TEST(SampleStudentT, ScalingLaplacianScalesScatterInversely) {
  const WeightVector w = unit_degree_graph(6, 2, 12);
  const Matrix a = oracle::second_moment(sample_student_t(laplacian_op(w), 5.0, 2000, 13), false);
  const Matrix b = oracle::second_moment(
      sample_student_t(SymmetricMatrix(4.0 * laplacian_op(w).matrix()), 5.0, 2000, 13), false);
  // same seed, so the samples differ by exactly the factor 1/sqrt(c)
  EXPECT_LE((b - a / 4.0).cwiseAbs().maxCoeff(), 1e-10 * a.cwiseAbs().maxCoeff());
}

TEST(SampleStudentT, Deterministic) {
  const WeightVector w = unit_degree_graph(4, 1, 14);
  EXPECT_EQ(sample_student_t(laplacian_op(w), 4.0, 50, 15), sample_student_t(laplacian_op(w), 4.0, 50, 15));
  EXPECT_THROW(sample_student_t(laplacian_op(w), 2.0, 50, 15), ParameterError);
}
