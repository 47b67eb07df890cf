#include "fingraph/solvers.hpp"

#include "fingraph/error.hpp"
#include "spectral_detail.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace fingraph {

std::string to_string(Method method) {
  switch (method) {
    case Method::ConnectedGaussian: return "connected-gaussian";
    case Method::KComponentGaussian: return "k-gaussian";
    case Method::ConnectedStudentT: return "connected-t";
    case Method::KComponentStudentT: return "kt";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "connected" || name == "connected-gaussian") return Method::ConnectedGaussian;
  if (name == "k" || name == "k-gaussian") return Method::KComponentGaussian;
  if (name == "t" || name == "connected-t") return Method::ConnectedStudentT;
  if (name == "kt") return Method::KComponentStudentT;
  throw ParameterError("unknown method '" + std::string(name) + "' (expected connected, k, t or kt)");
}

bool is_student_t(Method method) {
  return method == Method::ConnectedStudentT || method == Method::KComponentStudentT;
}

bool is_k_component(Method method) {
  return method == Method::KComponentGaussian || method == Method::KComponentStudentT;
}

std::string to_string(InitMode mode) { return mode == InitMode::Pinv ? "pinv" : "pinv-neg"; }

InitMode parse_init_mode(std::string_view name) {
  if (name == "pinv") return InitMode::Pinv;
  if (name == "pinv-neg") return InitMode::PinvNegated;
  throw ParameterError("unknown init mode '" + std::string(name) + "' (expected pinv or pinv-neg)");
}

void SolverConfig::validate(Method method, Index p) const {
  if (p < 2) throw ParameterError("graph learning needs at least 2 nodes");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw ParameterError("rho must be positive");
  if (!(tol > 0.0)) throw ParameterError("tol must be positive");
  if (max_iter < 1) throw ParameterError("max_iter must be at least 1");
  if (inner_iter < 1) throw ParameterError("inner_iter must be at least 1");
  if (!(rank_tol > 0.0)) throw ParameterError("rank_tol must be positive");
  if (adaptive_rho && (!(rho_growth > 1.0) || !(rho_max >= rho))) {
    throw ParameterError("adaptive rho needs growth > 1 and rho_max >= rho");
  }
  if (is_k_component(method) && (k < 1 || k >= p)) {
    throw ParameterError("k must satisfy 1 <= k < p, got k=" + std::to_string(k));
  }
  if (eta && (!(*eta >= 0.0) || !std::isfinite(*eta))) {
    throw ParameterError("eta must be nonnegative");
  }
  if (is_student_t(method)) {
    if (!nu) throw ParameterError("nu is required for Student-t methods");
    if (!(*nu > 2.0)) throw ParameterError("nu must be greater than 2");
  }
  if (degree_target) {
    if (degree_target->size() != p) {
      throw DimensionError("degree target has length " + std::to_string(degree_target->size()) +
                           ", expected " + std::to_string(p));
    }
    for (Index i = 0; i < p; ++i) {
      if (!((*degree_target)[i] > 0.0) || !std::isfinite((*degree_target)[i])) {
        throw ParameterError("degree targets must be positive");
      }
    }
  }
}

Vector SolverConfig::degrees_or_default(Index p) const {
  return degree_target ? *degree_target : Vector::Ones(p);
}

ObjectiveData ObjectiveData::gaussian(const SymmetricMatrix& s) {
  ObjectiveData out;
  out.p_ = s.size();
  out.second_moment_ = s.matrix();
  out.scatter_edges_ = laplacian_adjoint(s.matrix());
  return out;
}

ObjectiveData ObjectiveData::student_t(const Matrix& x, double nu) {
  if (!(nu > 2.0)) throw ParameterError("nu must be greater than 2");
  if (x.rows() < 1 || x.cols() < 2) throw DimensionError("data matrix needs n >= 1 rows and p >= 2 columns");
  if (!x.allFinite()) throw DataError("data matrix has non-finite entries");
  ObjectiveData out;
  const Index n = x.rows();
  const Index p = x.cols();
  out.p_ = p;
  out.nu_ = nu;
  out.second_moment_ = x.transpose() * x / static_cast<double>(n);
  out.sample_edges_.resize(n, edge_count(p));
  for (Index i = 0; i < n; ++i) {
    Index k = 0;
    for (Index b = 0; b < p; ++b) {
      for (Index a = b + 1; a < p; ++a, ++k) {
        const double diff = x(i, a) - x(i, b);
        out.sample_edges_(i, k) = diff * diff;
      }
    }
  }
  return out;
}

Vector ObjectiveData::scatter_edges(const Vector& w) const {
  if (!nu_) return scatter_edges_;
  const double nu = *nu_;
  const double scale = (static_cast<double>(p_) + nu) / static_cast<double>(sample_edges_.rows());
  const Vector q = sample_edges_ * w;
  const Vector weights = scale * (q.array() + nu).inverse();
  return sample_edges_.transpose() * weights;
}

double ObjectiveData::data_term(const Vector& w) const {
  if (!nu_) return scatter_edges_.dot(w);
  const double nu = *nu_;
  const Vector q = sample_edges_ * w;
  double total = 0.0;
  for (Index i = 0; i < q.size(); ++i) total += std::log1p(q[i] / nu);
  return (static_cast<double>(p_) + nu) / static_cast<double>(q.size()) * total;
}

WeightVector init_weights(const SymmetricMatrix& s, InitMode mode) {
  const Index p = s.size();
  const Matrix inv = pseudo_inverse(s);
  Vector w(edge_count(p));
  const double sign = mode == InitMode::Pinv ? 1.0 : -1.0;
  Index k = 0;
  for (Index j = 0; j < p; ++j) {
    for (Index i = j + 1; i < p; ++i, ++k) {
      w[k] = std::max(0.0, sign * inv(i, j));
    }
  }
  return WeightVector(std::move(w), p);
}

double default_eta(const Matrix& s) { return 100.0 * s.cwiseAbs().mean(); }

double resolved_eta(const SolverConfig& config, const ObjectiveData& data) {
  return config.eta ? *config.eta : default_eta(data.second_moment());
}

Vector mm_weight_update(const Vector& w, const DualState& state, const ObjectiveData& data,
                        const SolverConfig& config, double rho, const Vector* eta_edges) {
  const Index p = data.nodes();
  const double denom = mm_step_denominator(p, rho);
  const Vector d = config.degrees_or_default(p);

  // Parts of a + b that do not depend on the inner iterate.
  Vector fixed = laplacian_adjoint(-state.Y - rho * state.theta) + degree_adjoint(state.y - rho * d);
  if (eta_edges) fixed += *eta_edges;

  Vector current = w;
  for (int it = 0; it < config.inner_iter; ++it) {
    const Vector grad = data.scatter_edges(current) + fixed +
                        rho * laplacian_adjoint(laplacian(current, p)) +
                        rho * degree_adjoint(degrees(current, p));
    Vector next = (current - grad / denom).cwiseMax(0.0);
    const double change = (next - current).cwiseAbs().maxCoeff();
    current = std::move(next);
    if (change < config.tol / 10.0) break;
  }
  return current;
}

WeightVector w_inner_update_gaussian(const WeightVector& w, const DualState& state,
                                     const SymmetricMatrix& s, const SolverConfig& config,
                                     const std::optional<SymmetricMatrix>& eta_term) {
  if (s.size() != w.nodes()) throw DimensionError("similarity and weight dimensions differ");
  const ObjectiveData data = ObjectiveData::gaussian(s);
  std::optional<Vector> eta_edges;
  if (eta_term) eta_edges = laplacian_adj(*eta_term);
  return WeightVector(mm_weight_update(w.values(), state, data, config, config.rho,
                                       eta_edges ? &*eta_edges : nullptr),
                      w.nodes());
}

SymmetricMatrix weighted_scatter(const Matrix& x, const WeightVector& w, double nu) {
  if (!(nu > 2.0)) throw ParameterError("nu must be greater than 2");
  if (x.cols() != w.nodes()) throw DimensionError("data columns and weight dimension differ");
  if (x.rows() < 1) throw DimensionError("weighted scatter needs at least one observation");
  const Matrix l = laplacian(w.values(), w.nodes());
  const double p = static_cast<double>(x.cols());
  Vector weights(x.rows());
  for (Index i = 0; i < x.rows(); ++i) {
    const double q = x.row(i) * l * x.row(i).transpose();
    weights[i] = (p + nu) / (q + nu);
  }
  const Matrix out = x.transpose() * weights.asDiagonal() * x / static_cast<double>(x.rows());
  return SymmetricMatrix(0.5 * (out + out.transpose()));
}

namespace {

double neg_log_det_term(Method method, const Matrix& theta, Index k, double rank_tol) {
  const Index p = theta.rows();
  if (!is_k_component(method)) {
    const Matrix shifted = theta + Matrix::Constant(p, p, 1.0 / static_cast<double>(p));
    Eigen::LLT<Matrix> chol(shifted);
    if (chol.info() != Eigen::Success) {
      throw NumericalError("Theta + J is not positive definite");
    }
    return -2.0 * chol.matrixL().toDenseMatrix().diagonal().array().log().sum();
  }
  const EigenPair eig = detail::eigen_decompose_raw(theta);
  const double cut = rank_tol * eig.eigenvalues.cwiseAbs().maxCoeff();
  double total = 0.0;
  for (Index i = k; i < p; ++i) {
    if (!(eig.eigenvalues[i] > cut)) {
      throw NumericalError("Theta has fewer than p - k positive eigenvalues");
    }
    total += std::log(eig.eigenvalues[i]);
  }
  return -total;
}

}  // namespace

double augmented_lagrangian(Method method, const ObjectiveData& data, const DualState& state,
                            const Vector& w, const SolverConfig& config, double rho,
                            const Matrix* subspace) {
  const Index p = data.nodes();
  if (w.size() != edge_count(p) || state.theta.rows() != p || state.Y.rows() != p ||
      state.y.size() != p) {
    throw DimensionError("augmented Lagrangian arguments have inconsistent dimensions");
  }
  const Matrix lw = laplacian(w, p);
  const Matrix r = state.theta - lw;
  const Vector s = degrees(w, p) - config.degrees_or_default(p);

  double value = data.data_term(w) + neg_log_det_term(method, state.theta, config.k, config.rank_tol);
  if (is_k_component(method)) {
    if (!subspace) throw ParameterError("k-component Lagrangian needs the subspace V");
    const double eta = resolved_eta(config, data);
    value += eta * (subspace->transpose() * lw * *subspace).trace();
  }
  value += (state.Y.array() * r.array()).sum() + 0.5 * rho * r.squaredNorm();
  value += state.y.dot(s) + 0.5 * rho * s.squaredNorm();
  return value;
}

GraphLearner::GraphLearner(Method method, ObjectiveData data, SolverConfig config)
    : method_(method), data_(std::move(data)), config_(std::move(config)), p_(data_.nodes()) {
  config_.validate(method_, p_);
  if (is_student_t(method_) != data_.heavy_tailed()) {
    throw ParameterError("objective data does not match method " + to_string(method_));
  }
  d_ = config_.degrees_or_default(p_);
  rho_ = config_.rho;
  if (is_k_component(method_)) {
    eta_ = resolved_eta(config_, data_);
    config_.eta = eta_;
  }
  w_ = init_weights(SymmetricMatrix(data_.second_moment()), config_.init).values();
  const Matrix lw = laplacian(w_, p_);
  state_.theta = lw;
  state_.Y = Matrix::Zero(p_, p_);
  state_.y = Vector::Zero(p_);
  if (is_k_component(method_)) {
    v_ = detail::eigen_decompose_raw(lw).eigenvectors.leftCols(config_.k);
  }
}

TraceRecord GraphLearner::step() {
  ++iteration_;
  const Matrix theta_prev = state_.theta;
  const double n = static_cast<double>(p_);

  Matrix lw = laplacian(w_, p_);
  if (is_k_component(method_)) {
    state_.theta = detail::apply_logdet_prox(rho_ * lw - state_.Y, rho_, config_.k).value;
  } else {
    const Matrix j = Matrix::Constant(p_, p_, 1.0 / n);
    state_.theta = detail::apply_logdet_prox(rho_ * (lw + j) - state_.Y, rho_, 0).value - j;
  }

  std::optional<Vector> eta_edges;
  if (v_) eta_edges = eta_ * laplacian_adjoint(*v_ * v_->transpose());
  w_ = mm_weight_update(w_, state_, data_, config_, rho_, eta_edges ? &*eta_edges : nullptr);
  if (!w_.allFinite()) throw DivergenceError(iteration_, "non-finite edge weights");

  lw = laplacian(w_, p_);
  if (v_) v_ = detail::eigen_decompose_raw(lw).eigenvectors.leftCols(config_.k);

  const Matrix r = state_.theta - lw;
  const Vector s = degrees(w_, p_) - d_;
  state_.Y += rho_ * r;
  state_.y += rho_ * s;
  if (!state_.theta.allFinite() || !state_.Y.allFinite() || !state_.y.allFinite()) {
    throw DivergenceError(iteration_, "non-finite Theta or dual variables");
  }

  TraceRecord rec;
  rec.iter = iteration_;
  rec.r_norm = r.cwiseAbs().maxCoeff();
  rec.s_norm = s.cwiseAbs().maxCoeff();
  rec.v_norm = rho_ * laplacian_adjoint(state_.theta - theta_prev).cwiseAbs().maxCoeff();
  try {
    rec.lagrangian = augmented_lagrangian(method_, data_, state_, w_, config_, rho_, v_ ? &*v_ : nullptr);
  } catch (const NumericalError&) {
    rec.lagrangian = std::numeric_limits<double>::quiet_NaN();
  }

  if (config_.adaptive_rho && !trace_.empty() && rec.lagrangian > trace_.back().lagrangian) {
    rho_ = std::min(rho_ * config_.rho_growth, config_.rho_max);
  }
  trace_.push_back(rec);
  converged_ = rec.r_norm <= config_.tol && rec.s_norm <= config_.tol;
  return rec;
}

GraphEstimate GraphLearner::run(std::vector<std::string> names) {
  while (!converged_ && iteration_ < config_.max_iter) step();
  return estimate(std::move(names));
}

GraphEstimate GraphLearner::estimate(std::vector<std::string> names) const {
  if (names.empty()) {
    for (Index i = 0; i < p_; ++i) names.push_back("x" + std::to_string(i + 1));
  }
  if (static_cast<Index>(names.size()) != p_) {
    throw DimensionError("expected " + std::to_string(p_) + " node names, got " +
                         std::to_string(names.size()));
  }
  WeightVector weights(w_, p_);
  SymmetricMatrix lap = laplacian_op(weights);
  return GraphEstimate{std::move(weights), std::move(lap), std::move(names), method_, converged_,
                       iteration_, trace_, config_, state_, rho_};
}

namespace {

GraphEstimate run_method(Method method, ObjectiveData data, SolverConfig config,
                         std::vector<std::string> names) {
  GraphLearner learner(method, std::move(data), std::move(config));
  return learner.run(std::move(names));
}

ObjectiveData heavy_tailed_data(const Matrix& x, const SolverConfig& config) {
  if (x.rows() < 2) throw DimensionError("Student-t methods need at least 2 observations");
  if (!config.nu) throw ParameterError("nu is required for Student-t methods");
  return ObjectiveData::student_t(x, *config.nu);
}

}  // namespace

GraphEstimate learn_connected_gaussian(const SymmetricMatrix& s, SolverConfig config,
                                       std::vector<std::string> names) {
  return run_method(Method::ConnectedGaussian, ObjectiveData::gaussian(s), std::move(config),
                    std::move(names));
}

GraphEstimate learn_k_component_gaussian(const SymmetricMatrix& s, SolverConfig config,
                                         std::vector<std::string> names) {
  return run_method(Method::KComponentGaussian, ObjectiveData::gaussian(s), std::move(config),
                    std::move(names));
}

GraphEstimate learn_connected_t(const Matrix& x, SolverConfig config, std::vector<std::string> names) {
  config.validate(Method::ConnectedStudentT, x.cols());
  ObjectiveData data = heavy_tailed_data(x, config);
  return run_method(Method::ConnectedStudentT, std::move(data), std::move(config), std::move(names));
}

GraphEstimate learn_kt(const Matrix& x, SolverConfig config, std::vector<std::string> names) {
  config.validate(Method::KComponentStudentT, x.cols());
  ObjectiveData data = heavy_tailed_data(x, config);
  return run_method(Method::KComponentStudentT, std::move(data), std::move(config), std::move(names));
}

}  // namespace fingraph
