#include <fingraph/graph_ops.hpp>
#include <fingraph/preprocess.hpp>
#include <fingraph/solvers.hpp>
#include <fingraph/spectral.hpp>
#include <fingraph/synth.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace fingraph;

namespace {

Vector random_weights(Index p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vector w(edge_count(p));
  for (Index k = 0; k < w.size(); ++k) w[k] = u(rng);
  return w;
}

void BM_Laplacian(benchmark::State& state) {
  const Index p = state.range(0);
  const Vector w = random_weights(p, 1);
  for (auto _ : state) benchmark::DoNotOptimize(laplacian(w, p));
}
BENCHMARK(BM_Laplacian)->Arg(50)->Arg(200)->Arg(500);

void BM_LaplacianAdjoint(benchmark::State& state) {
  const Index p = state.range(0);
  const Matrix m = laplacian(random_weights(p, 2), p);
  for (auto _ : state) benchmark::DoNotOptimize(laplacian_adjoint(m));
}
BENCHMARK(BM_LaplacianAdjoint)->Arg(50)->Arg(200)->Arg(500);

void BM_ProxLogdet(benchmark::State& state) {
  const Index p = state.range(0);
  const SymmetricMatrix m(laplacian(random_weights(p, 3), p));
  for (auto _ : state) benchmark::DoNotOptimize(prox_logdet_rank(m, 1.0, 3));
}
BENCHMARK(BM_ProxLogdet)->Arg(50)->Arg(200);

void BM_SolverStep(benchmark::State& state) {
  const Index p = state.range(0);
  const PlantedGraph g = planted_k_component(p, 3, 0.3, {}, 4);
  const Matrix x = sample_lgmrf(g.laplacian(), 10 * p, 5);
  const SymmetricMatrix s = similarity(ReturnsMatrix(x), SimilaritySpec{});
  SolverConfig cfg;
  cfg.k = 3;
  GraphLearner learner(Method::KComponentGaussian, ObjectiveData::gaussian(s), cfg);
  for (auto _ : state) benchmark::DoNotOptimize(learner.step());
}
BENCHMARK(BM_SolverStep)->Arg(30)->Arg(100);

void BM_StudentTStep(benchmark::State& state) {
  const Index p = state.range(0);
  const PlantedGraph g = planted_k_component(p, 3, 0.3, {}, 6);
  const Matrix x = scale_columns(sample_student_t(g.laplacian(), 4.0, 10 * p, 7));
  SolverConfig cfg;
  cfg.k = 3;
  cfg.nu = 4.0;
  GraphLearner learner(Method::KComponentStudentT, ObjectiveData::student_t(x, 4.0), cfg);
  for (auto _ : state) benchmark::DoNotOptimize(learner.step());
}
BENCHMARK(BM_StudentTStep)->Arg(30)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
