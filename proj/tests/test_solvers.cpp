#include <fingraph/error.hpp>
#include <fingraph/metrics.hpp>
#include <fingraph/preprocess.hpp>
#include <fingraph/solvers.hpp>
#include <fingraph/synth.hpp>

#include <gtest/gtest.h>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <random>

#include "support/oracles.hpp"

using namespace fingraph;

namespace {

Matrix random_matrix(Index r, Index c, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = n(rng);
  return m;
}

Matrix random_symmetric(Index p, std::mt19937_64& rng) {
  const Matrix m = random_matrix(p, p, rng);
  return 0.5 * (m + m.transpose());
}

// Correlation of LGMRF samples drawn from a unit-degree graph.
struct GaussianFixture {
  WeightVector truth;
  SymmetricMatrix s;
};

GaussianFixture unit_degree_fixture(Index p, Index n, std::uint64_t seed) {
  WeightVector truth = unit_degree_graph(p, 3, seed);
  const Matrix x = sample_lgmrf(laplacian_op(truth), n, seed + 100);
  return {truth, similarity(ReturnsMatrix(x), SimilaritySpec{})};
}

// Value of the w-subproblem the inner loop descends.
double w_subproblem(const Vector& w, const DualState& st, const Matrix& s, const Vector& d, double rho) {
  const Index p = s.rows();
  const Matrix lw = oracle::laplacian_from_pairs(w, p);
  const Vector dw = oracle::dense_degree_operator(p) * w;
  const Matrix r = st.theta - lw;
  return (s.array() * lw.array()).sum() + (st.Y.array() * r.array()).sum() + 0.5 * rho * r.squaredNorm() +
         st.y.dot(dw - d) + 0.5 * rho * (dw - d).squaredNorm();
}

DualState random_state(Index p, std::mt19937_64& rng) {
  DualState st;
  st.theta = random_symmetric(p, rng);
  st.Y = random_symmetric(p, rng);
  st.y = random_matrix(p, 1, rng);
  return st;
}

}  // namespace

TEST(MethodNames, RoundTrip) {
  for (Method m : {Method::ConnectedGaussian, Method::KComponentGaussian, Method::ConnectedStudentT,
                   Method::KComponentStudentT}) {
    EXPECT_EQ(parse_method(to_string(m)), m);
  }
  EXPECT_EQ(parse_method("kt"), Method::KComponentStudentT);
  EXPECT_EQ(parse_method("connected"), Method::ConnectedGaussian);
  EXPECT_THROW(parse_method("spectral"), ParameterError);
  EXPECT_EQ(parse_init_mode("pinv-neg"), InitMode::PinvNegated);
  EXPECT_THROW(parse_init_mode("zero"), ParameterError);
}

TEST(InitWeights, IdentityGivesEmptyGraph) {
  EXPECT_EQ(init_weights(SymmetricMatrix::identity(4)).values(), Vector::Zero(6));
  EXPECT_EQ(init_weights(SymmetricMatrix::identity(4), InitMode::PinvNegated).values(), Vector::Zero(6));
}

TEST(InitWeights, SignConventionAtOneEdge) {
  Matrix prec(3, 3);
  prec << 2.0, -0.5, 0.0, -0.5, 2.0, -0.2, 0.0, -0.2, 2.0;
  const SymmetricMatrix s(prec.inverse());
  const Index e = edge_index(1, 0, 3);
  EXPECT_EQ(init_weights(s, InitMode::Pinv)[e], 0.0);
  EXPECT_NEAR(init_weights(s, InitMode::PinvNegated)[e], 0.5, 1e-12);
}

TEST(InitWeights, MatchesDirectPseudoInverseOnRandomCorrelation) {
  std::mt19937_64 rng(21);
  const Matrix x = random_matrix(50, 3, rng);
  const SymmetricMatrix s = similarity(ReturnsMatrix(x), SimilaritySpec{});
  const Matrix inv = s.matrix().inverse();
  const WeightVector w = init_weights(s);
  for (const auto& [i, j] : oracle::edge_pairs(3)) {
    EXPECT_NEAR(w[edge_index(i, j, 3)], std::max(0.0, inv(i, j)), 1e-10);
  }
}

TEST(InnerUpdate, ZeroGradientIsFixedPoint) {
  // Theta = Lw, degrees already at target, and S chosen so that L*S cancels.
  const WeightVector w(Vector::Constant(3, 0.5), 3);
  DualState st{laplacian(w.values(), 3), Matrix::Zero(3, 3), Vector::Zero(3)};
  SolverConfig cfg;
  cfg.inner_iter = 3;
  const WeightVector out = w_inner_update_gaussian(w, st, SymmetricMatrix::zero(3), cfg);
  EXPECT_LE((out.values() - w.values()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(InnerUpdate, SingleStepArithmetic) {
  // p = 3, rho = 1: denominator 10 and gradient (10, 10, 10), so w = 1 - 1 = 0.
  const WeightVector w(Vector::Ones(3), 3);
  DualState st{laplacian(w.values(), 3), Matrix::Zero(3, 3), Vector::Zero(3)};
  SolverConfig cfg;
  cfg.inner_iter = 1;
  cfg.degree_target = Vector::Constant(3, 2.0);
  const WeightVector out = w_inner_update_gaussian(w, st, SymmetricMatrix(5.0 * Matrix::Identity(3, 3)), cfg);
  EXPECT_LE(out.values().cwiseAbs().maxCoeff(), 1e-15);
}

TEST(InnerUpdate, ConvergesToQuadraticMinimizer) {
  std::mt19937_64 rng(22);
  const Index p = 4;
  const double rho = 1.0;
  const Matrix x = random_matrix(40, p, rng);
  const Matrix s = oracle::second_moment(x, true);
  const DualState st = random_state(p, rng);
  const Vector d = Vector::Ones(p);

  const Matrix lop = oracle::dense_laplacian_operator(p);
  const Matrix dop = oracle::dense_degree_operator(p);
  const Matrix q = rho * (dop.transpose() * dop + lop.transpose() * lop);
  auto vec = [](const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); };
  const Vector c = lop.transpose() * vec(s) - lop.transpose() * vec(st.Y) - rho * lop.transpose() * vec(st.theta) +
                   dop.transpose() * st.y - rho * dop.transpose() * d;
  const Vector w0 = Vector::Constant(edge_count(p), 0.3);
  const Vector ref = oracle::projected_gradient_quadratic(q, c, w0, 1e-4, 100000);

  SolverConfig cfg;
  cfg.rho = rho;
  cfg.inner_iter = 100000;
  cfg.tol = 1e-14;
  const Vector got = w_inner_update_gaussian(WeightVector(w0, p), st, SymmetricMatrix(s), cfg).values();
  EXPECT_LE((got - ref).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(InnerUpdate, EachStepDoesNotIncreaseSubproblem) {
  std::mt19937_64 rng(23);
  const Index p = 6;
  const Matrix s = oracle::second_moment(random_matrix(30, p, rng), true);
  const DualState st = random_state(p, rng);
  SolverConfig cfg;
  cfg.inner_iter = 1;
  cfg.rho = 2.0;
  WeightVector w(Vector::Constant(edge_count(p), 0.2), p);
  double prev = w_subproblem(w.values(), st, s, Vector::Ones(p), cfg.rho);
  for (int it = 0; it < 50; ++it) {
    w = w_inner_update_gaussian(w, st, SymmetricMatrix(s), cfg);
    const double now = w_subproblem(w.values(), st, s, Vector::Ones(p), cfg.rho);
    EXPECT_LE(now, prev + 1e-10);
    prev = now;
  }
}

TEST(WeightedScatter, EmptyGraphScalesSecondMoment) {
  std::mt19937_64 rng(24);
  const Matrix x = random_matrix(20, 4, rng);
  const double nu = 5.0;
  const Matrix got = weighted_scatter(x, WeightVector::zeros(4), nu).matrix();
  const Matrix expected = (4.0 + nu) / nu * x.transpose() * x / 20.0;
  EXPECT_LE((got - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(WeightedScatter, LargeNuApproachesSecondMoment) {
  std::mt19937_64 rng(25);
  const Matrix x = random_matrix(30, 5, rng);
  const WeightVector w(Vector::Constant(10, 0.3), 5);
  const Matrix got = weighted_scatter(x, w, 1e6).matrix();
  const Matrix m2 = x.transpose() * x / 30.0;
  EXPECT_LE((got - m2).norm() / m2.norm(), 1e-4);
}

TEST(WeightedScatter, UnitWeightWhenQuadraticFormEqualsP) {
  // Single observation with x^T L x = p: weight (p + nu) / (p + nu) = 1.
  const Index p = 3;
  Vector x(p);
  x << 1.0, -0.5, 0.0;
  const WeightVector w0(Vector::Ones(3), p);
  const double q = x.dot(laplacian(w0.values(), p) * x);
  const WeightVector w(Vector::Constant(3, static_cast<double>(p) / q), p);
  const Matrix got = weighted_scatter(x.transpose(), w, 4.0).matrix();
  EXPECT_LE((got - x * x.transpose()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ObjectiveData, StudentTScatterEdgesMatchAdjointOfWeightedScatter) {
  std::mt19937_64 rng(26);
  const Matrix x = random_matrix(25, 5, rng);
  const double nu = 4.0;
  const Vector w = Vector::Constant(10, 0.1) + 0.05 * random_matrix(10, 1, rng).cwiseAbs();
  const ObjectiveData data = ObjectiveData::student_t(x, nu);
  const Vector expected = laplacian_adj(weighted_scatter(x, WeightVector(w, 5), nu));
  EXPECT_LE((data.scatter_edges(w) - expected).cwiseAbs().maxCoeff(), 1e-10);

  // and it is the gradient of the data term
  for (Index k = 0; k < w.size(); ++k) {
    Vector up = w, dn = w;
    const double h = 1e-6;
    up[k] += h;
    dn[k] -= h;
    const double fd = (data.data_term(up) - data.data_term(dn)) / (2 * h);
    EXPECT_NEAR(fd, expected[k], 1e-5 * std::max(1.0, std::abs(expected[k])));
  }
}

TEST(ObjectiveData, GaussianDataTermIsTraceProduct) {
  std::mt19937_64 rng(27);
  const Matrix s = oracle::second_moment(random_matrix(30, 4, rng), true);
  const Vector w = random_matrix(6, 1, rng).cwiseAbs();
  EXPECT_NEAR(ObjectiveData::gaussian(SymmetricMatrix(s)).data_term(w),
              (s.array() * oracle::laplacian_from_pairs(w, 4).array()).sum(), 1e-12);
}

TEST(ConnectedGaussian, RecoversUnitDegreeGraph) {
  const GaussianFixture f = unit_degree_fixture(10, 5000, 3);
  const GraphEstimate est = learn_connected_gaussian(f.s, SolverConfig{});
  ASSERT_TRUE(est.converged);
  EXPECT_LE((degree_op(est.weights) - Vector::Ones(10)).cwiseAbs().maxCoeff(), 1e-4);
  const SymmetricMatrix truth = laplacian_op(f.truth);
  const double err = relative_error(est.laplacian, truth);
  const double init = relative_error(laplacian_op(init_weights(f.s, InitMode::PinvNegated)), truth);
  EXPECT_LT(err, init);
  EXPECT_LE(est.trace.back().r_norm, 1e-6);
  EXPECT_LE(est.trace.back().s_norm, 1e-6);
}

TEST(ConnectedGaussian, MatchesPenaltyMethodOracle) {
  const GaussianFixture f = unit_degree_fixture(5, 2000, 4);
  SolverConfig cfg;
  cfg.tol = 1e-9;
  const GraphEstimate est = learn_connected_gaussian(f.s, cfg);
  ASSERT_TRUE(est.converged);
  EXPECT_LE((est.state.theta - est.laplacian.matrix()).cwiseAbs().maxCoeff(), cfg.tol);
  const Vector ref = oracle::penalty_method_connected(f.s.matrix(), Vector::Ones(5), Vector::Constant(10, 0.2));
  EXPECT_LE((est.weights.values() - ref).norm() / ref.norm(), 1e-3);
}

TEST(ConnectedGaussian, RunsAreDeterministic) {
  const GaussianFixture f = unit_degree_fixture(8, 500, 5);
  const GraphEstimate a = learn_connected_gaussian(f.s, SolverConfig{});
  const GraphEstimate b = learn_connected_gaussian(f.s, SolverConfig{});
  EXPECT_EQ(a.weights.values(), b.weights.values());
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(GraphLearner, DualUpdatesAddRhoTimesResiduals) {
  const GaussianFixture f = unit_degree_fixture(6, 300, 6);
  SolverConfig cfg;
  cfg.rho = 3.0;
  GraphLearner learner(Method::ConnectedGaussian, ObjectiveData::gaussian(f.s), cfg);
  for (int it = 0; it < 5; ++it) {
    const DualState before = learner.state();
    const TraceRecord rec = learner.step();
    const Matrix lw = laplacian(learner.weights(), 6);
    const Matrix r = learner.state().theta - lw;
    const Vector s = degrees(learner.weights(), 6) - Vector::Ones(6);
    EXPECT_LE((learner.state().Y - before.Y - 3.0 * r).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((learner.state().y - before.y - 3.0 * s).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(rec.r_norm, r.cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_NEAR(rec.s_norm, s.cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(rec.iter, it + 1);
  }
}

TEST(GraphLearner, RejectsMismatchedData) {
  EXPECT_THROW(GraphLearner(Method::ConnectedStudentT, ObjectiveData::gaussian(SymmetricMatrix::identity(3)),
                            [] {
                              SolverConfig c;
                              c.nu = 4.0;
                              return c;
                            }()),
               ParameterError);
}

TEST(KComponentGaussian, RecoversPlantedPartitionWithTargetDegrees) {
  const PlantedGraph g = planted_k_component(12, 2, 0.5, {}, 7);
  const Matrix x = sample_lgmrf(g.laplacian(), 2000, 8);
  SolverConfig cfg;
  cfg.k = 2;
  const GraphEstimate est = learn_k_component_gaussian(similarity(ReturnsMatrix(x), SimilaritySpec{}), cfg);
  ASSERT_TRUE(est.converged);
  EXPECT_LE((degree_op(est.weights) - Vector::Ones(12)).cwiseAbs().maxCoeff(), 1e-4);
  const Partition part = components(est.adjacency());
  std::vector<Index> truth;
  for (int l : g.partition.labels()) truth.push_back(l);
  EXPECT_TRUE(same_partition(part.assignment, truth));
}

TEST(KComponentGaussian, KOneLeavesSingleZeroEigenvalue) {
  const GaussianFixture f = unit_degree_fixture(8, 1000, 9);
  SolverConfig cfg;
  cfg.k = 1;
  const GraphEstimate est = learn_k_component_gaussian(f.s, cfg);
  ASSERT_TRUE(est.converged);
  EXPECT_EQ(nullity(est.laplacian, 1e-9), 1);
}

TEST(StudentT, ConnectedEstimateMeetsDegreeTarget) {
  const WeightVector truth = unit_degree_graph(8, 3, 10);
  const Matrix x = scale_columns(sample_student_t(laplacian_op(truth), 4.0, 800, 11));
  SolverConfig cfg;
  cfg.nu = 4.0;
  const GraphEstimate est = learn_connected_t(x, cfg);
  ASSERT_TRUE(est.converged);
  EXPECT_LE((degree_op(est.weights) - Vector::Ones(8)).cwiseAbs().maxCoeff(), cfg.tol);
}

TEST(StudentT, KOneAgreesWithConnectedInComponentCount) {
  const WeightVector truth = unit_degree_graph(8, 3, 12);
  const Matrix x = scale_columns(sample_student_t(laplacian_op(truth), 4.0, 800, 13));
  SolverConfig cfg;
  cfg.nu = 4.0;
  cfg.k = 1;
  const GraphEstimate a = learn_connected_t(x, cfg);
  const GraphEstimate b = learn_kt(x, cfg);
  EXPECT_EQ(components(a.adjacency()).count, components(b.adjacency()).count);
  EXPECT_EQ(components(b.adjacency()).count, 1);
}

TEST(StudentT, RequiresNu) {
  std::mt19937_64 rng(28);
  const Matrix x = random_matrix(20, 4, rng);
  EXPECT_THROW(learn_connected_t(x, SolverConfig{}), ParameterError);
  EXPECT_THROW(learn_kt(x, SolverConfig{}), ParameterError);
}

TEST(SolverConfig, Validation) {
  SolverConfig cfg;
  cfg.k = 4;
  EXPECT_THROW(cfg.validate(Method::KComponentGaussian, 4), ParameterError);
  cfg.k = 1;
  cfg.rho = 0.0;
  EXPECT_THROW(cfg.validate(Method::ConnectedGaussian, 4), ParameterError);
  cfg.rho = 1.0;
  cfg.degree_target = Vector::Ones(3);
  EXPECT_THROW(cfg.validate(Method::ConnectedGaussian, 4), DimensionError);
  cfg.degree_target.reset();
  cfg.nu = 2.0;
  EXPECT_THROW(cfg.validate(Method::ConnectedStudentT, 4), ParameterError);
  cfg.nu = 4.0;
  EXPECT_NO_THROW(cfg.validate(Method::ConnectedStudentT, 4));
}

TEST(DivergenceError, CarriesIteration) {
  const DivergenceError e(17, "non-finite");
  EXPECT_EQ(e.iteration(), 17);
  const NumericalError& base = e;
  EXPECT_NE(std::string(base.what()).find("non-finite"), std::string::npos);
}

TEST(AugmentedLagrangian, FeasiblePointEqualsObjective) {
  std::mt19937_64 rng(29);
  const Index p = 6;
  const Vector w = unit_degree_graph(p, 2, 30).values();
  const Matrix lw = oracle::laplacian_from_pairs(w, p);
  const Matrix s = oracle::second_moment(random_matrix(40, p, rng), true);
  DualState st{lw, random_symmetric(p, rng), random_matrix(p, 1, rng)};
  const ObjectiveData data = ObjectiveData::gaussian(SymmetricMatrix(s));
  SolverConfig cfg;

  const Matrix shifted = lw + Matrix::Constant(p, p, 1.0 / p);
  const double objective = (s.array() * lw.array()).sum() - std::log(shifted.determinant());
  const double v1 = augmented_lagrangian(Method::ConnectedGaussian, data, st, w, cfg, 1.0);
  const double v2 = augmented_lagrangian(Method::ConnectedGaussian, data, st, w, cfg, 2.0);
  EXPECT_NEAR(v1, objective, 1e-10);
  EXPECT_NEAR(v2, v1, 1e-12);
}

TEST(AugmentedLagrangian, KComponentNeedsSubspace) {
  const Index p = 4;
  const Vector w = unit_degree_graph(p, 1, 31).values();
  const ObjectiveData data = ObjectiveData::gaussian(SymmetricMatrix::identity(p));
  DualState st{laplacian(w, p), Matrix::Zero(p, p), Vector::Zero(p)};
  SolverConfig cfg;
  EXPECT_THROW(augmented_lagrangian(Method::KComponentGaussian, data, st, w, cfg, 1.0), ParameterError);
  const Matrix v = Matrix::Constant(p, 1, 0.5);
  // feasible and V spans the null space, so the eta term is zero too
  const double pseudo = -std::log(Eigen::SelfAdjointEigenSolver<Matrix>(laplacian(w, p)).eigenvalues().tail(3).prod());
  const double value = augmented_lagrangian(Method::KComponentGaussian, data, st, w, cfg, 1.0, &v);
  EXPECT_NEAR(value, laplacian(w, p).trace() + pseudo, 1e-10);
}
