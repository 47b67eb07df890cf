#pragma once

#include "fingraph/graph_ops.hpp"
#include "fingraph/spectral.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fingraph {

enum class Method { ConnectedGaussian, KComponentGaussian, ConnectedStudentT, KComponentStudentT };

/// "connected-gaussian", "k-gaussian", "connected-t", "kt".
std::string to_string(Method method);
/// Accepts the long names above and the short forms connected, k, t, kt.
Method parse_method(std::string_view name);
bool is_student_t(Method method);
bool is_k_component(Method method);

/// Initial graph read from the pseudo-inverse of S: Pinv keeps (S^+_ij)_+,
/// PinvNegated keeps (-S^+_ij)_+.
enum class InitMode { Pinv, PinvNegated };

std::string to_string(InitMode mode);
InitMode parse_init_mode(std::string_view name);

struct SolverConfig {
  double rho = 1.0;
  std::optional<double> eta;  // unset: 100 * mean|S|
  std::optional<double> nu;
  Index k = 1;
  std::optional<Vector> degree_target;  // unset: all ones
  double tol = 1e-6;
  int max_iter = 10000;
  int inner_iter = 5;
  bool adaptive_rho = false;
  double rho_growth = 1.1;
  double rho_max = 1e3;
  InitMode init = InitMode::PinvNegated;
  double rank_tol = 1e-9;

  /// Throws ParameterError (or DimensionError for a mismatched degree target).
  void validate(Method method, Index p) const;
  Vector degrees_or_default(Index p) const;
};

struct DualState {
  Matrix theta;
  Matrix Y;
  Vector y;
};

struct TraceRecord {
  int iter = 0;
  double r_norm = 0.0;  // max |Theta - Lw|
  double s_norm = 0.0;  // max |dw - d|
  double v_norm = 0.0;  // max |rho L*(Theta_l - Theta_{l-1})|
  double lagrangian = 0.0;
};

using SolverTrace = std::vector<TraceRecord>;

struct GraphEstimate {
  WeightVector weights;
  SymmetricMatrix laplacian;
  std::vector<std::string> node_names;
  Method method = Method::ConnectedGaussian;
  bool converged = false;
  int iterations = 0;
  SolverTrace trace;
  SolverConfig config;  // eta resolved, rho as given
  DualState state;
  double final_rho = 0.0;

  SymmetricMatrix adjacency() const { return adjacency_op(weights); }
};

/// Data-dependent part of the objective: tr(S Lw) for Gaussian methods or
/// (p+nu)/n sum_i log(1 + x_i^T Lw x_i / nu) for Student-t methods.
class ObjectiveData {
 public:
  static ObjectiveData gaussian(const SymmetricMatrix& s);
  static ObjectiveData student_t(const Matrix& x, double nu);

  Index nodes() const noexcept { return p_; }
  bool heavy_tailed() const noexcept { return nu_.has_value(); }
  std::optional<double> nu() const noexcept { return nu_; }

  /// S for Gaussian data, X^T X / n for Student-t data.
  const Matrix& second_moment() const noexcept { return second_moment_; }

  /// L* of the (possibly w-dependent) scatter matrix.
  Vector scatter_edges(const Vector& w) const;
  double data_term(const Vector& w) const;

 private:
  ObjectiveData() = default;

  Index p_ = 0;
  Matrix second_moment_;
  Vector scatter_edges_;          // Gaussian: L* S
  Matrix sample_edges_;           // Student-t: row i = L*(x_i x_i^T)
  std::optional<double> nu_;
};

WeightVector init_weights(const SymmetricMatrix& s, InitMode mode = InitMode::Pinv);

/// Default eta for k-component methods: 100 * mean |S|.
double default_eta(const Matrix& s);
double resolved_eta(const SolverConfig& config, const ObjectiveData& data);

/// inner_iter projected-gradient steps on the w-subproblem, stopping early
/// once a step moves no entry by more than tol / 10. eta_edges is
/// eta L*(V V^T) for k-component methods.
Vector mm_weight_update(const Vector& w, const DualState& state, const ObjectiveData& data,
                        const SolverConfig& config, double rho, const Vector* eta_edges = nullptr);

/// Gaussian inner update; eta_term is eta V V^T when present.
WeightVector w_inner_update_gaussian(const WeightVector& w, const DualState& state,
                                     const SymmetricMatrix& s, const SolverConfig& config,
                                     const std::optional<SymmetricMatrix>& eta_term = std::nullopt);

/// (1/n) sum_i (p+nu) / (<w, L*(x_i x_i^T)> + nu) x_i x_i^T.
SymmetricMatrix weighted_scatter(const Matrix& x, const WeightVector& w, double nu);

/// Partial augmented Lagrangian at (Theta, w, Y, y[, V]). The log-det term is
/// -log det(Theta + J) for connected methods and -log det* over the top
/// p - k eigenvalues for k-component methods.
double augmented_lagrangian(Method method, const ObjectiveData& data, const DualState& state,
                            const Vector& w, const SolverConfig& config, double rho,
                            const Matrix* subspace = nullptr);

/// Outer ADMM loop, one iteration per step() call.
class GraphLearner {
 public:
  GraphLearner(Method method, ObjectiveData data, SolverConfig config);

  TraceRecord step();
  bool converged() const noexcept { return converged_; }
  int iteration() const noexcept { return iteration_; }

  const Vector& weights() const noexcept { return w_; }
  const DualState& state() const noexcept { return state_; }
  double rho() const noexcept { return rho_; }
  double eta() const noexcept { return eta_; }
  const Vector& degree_target() const noexcept { return d_; }
  const std::optional<Matrix>& subspace() const noexcept { return v_; }
  const SolverTrace& trace() const noexcept { return trace_; }

  /// Steps until convergence or max_iter.
  GraphEstimate run(std::vector<std::string> names = {});
  GraphEstimate estimate(std::vector<std::string> names = {}) const;

 private:
  Method method_;
  ObjectiveData data_;
  SolverConfig config_;
  Index p_;
  Vector d_;
  double rho_;
  double eta_ = 0.0;
  Vector w_;
  DualState state_;
  std::optional<Matrix> v_;
  SolverTrace trace_;
  int iteration_ = 0;
  bool converged_ = false;
};

GraphEstimate learn_connected_gaussian(const SymmetricMatrix& s, SolverConfig config,
                                       std::vector<std::string> names = {});
GraphEstimate learn_k_component_gaussian(const SymmetricMatrix& s, SolverConfig config,
                                         std::vector<std::string> names = {});
GraphEstimate learn_connected_t(const Matrix& x, SolverConfig config,
                                std::vector<std::string> names = {});
GraphEstimate learn_kt(const Matrix& x, SolverConfig config, std::vector<std::string> names = {});

}  // namespace fingraph
