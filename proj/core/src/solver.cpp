#include "cprlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cprlab/rng.hpp"

namespace cprlab {

namespace {

Eigen::VectorXcd random_unit_gaussian(Eigen::Index n, RandomStream& rs) {
  Eigen::VectorXcd g(n);
  for (Eigen::Index i = 0; i < n; ++i) g(i) = rs.complex_gaussian();
  double norm = g.norm();
  if (norm > 0.0) g /= norm;
  return g;
}

std::vector<int> top_k_indices(const Eigen::VectorXd& scores, int k) {
  std::vector<int> idx(static_cast<std::size_t>(scores.size()));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return scores(a) > scores(b); });
  idx.resize(static_cast<std::size_t>(k));
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

std::string to_string(InitKind kind) {
  switch (kind) {
    case InitKind::spectral_sparse: return "spectral_sparse";
    case InitKind::ground_truth_perturbed: return "ground_truth_perturbed";
    case InitKind::random_start: return "random";
  }
  throw std::logic_error("unknown InitKind");
}

void SolverConfig::validate() const {
  if (k < 1) throw std::invalid_argument("SolverConfig: k must be >= 1");
  if (max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("SolverConfig: tol must be > 0");
  if (init == InitKind::ground_truth_perturbed && !ground_truth.has_value()) {
    throw std::invalid_argument("SolverConfig: ground_truth_perturbed needs a ground truth");
  }
}

SpectralInitResult spectral_init(const MeasurementEnsemble& ensemble, const Eigen::VectorXd& y,
                                 int k) {
  if (k < 1 || k > ensemble.n()) throw std::invalid_argument("spectral_init: need 1 <= k <= n");
  if (y.size() != ensemble.m()) throw std::invalid_argument("spectral_init: y size mismatch");
  int n = ensemble.n();
  int m = ensemble.m();

  SpectralInitResult result;
  double mean_y = y.mean();
  if (y.cwiseAbs().maxCoeff() == 0.0 || mean_y <= 0.0) {
    result.x = ComplexVector::zeros(n);
    result.support = SparseSupport(std::vector<int>{}, n);
    result.degenerate = true;
    return result;
  }

  // Support scores: (1/m) sum_j y_j |a_ji|^2.
  const Eigen::MatrixXcd& astar = ensemble.astar();
  Eigen::VectorXd scores = (astar.cwiseAbs2().transpose() * y) / static_cast<double>(m);
  std::vector<int> support = top_k_indices(scores, k);

  // Weighted second-moment matrix restricted to the support.
  Eigen::MatrixXcd restricted(m, k);
  for (int c = 0; c < k; ++c) restricted.col(c) = astar.col(support[static_cast<std::size_t>(c)]);
  Eigen::MatrixXcd weighted = restricted.adjoint() * (y.asDiagonal() * restricted) /
                              static_cast<double>(m);

  // Power iteration; the ramped start breaks symmetric ties.
  Eigen::VectorXcd q(k);
  for (int i = 0; i < k; ++i) q(i) = Complex(1.0 + static_cast<double>(i) / (2.0 * k), 0.0);
  q /= q.norm();
  for (int it = 0; it < 500; ++it) {
    Eigen::VectorXcd next = weighted * q;
    double norm = next.norm();
    if (norm == 0.0) break;
    next /= norm;
    double delta = std::min((next - q).norm(), (next + q).norm());
    q = next;
    if (delta < 1e-13) break;
  }

  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n);
  double scale = std::sqrt(std::max(mean_y, 0.0));
  for (int c = 0; c < k; ++c) x(support[static_cast<std::size_t>(c)]) = scale * q(c);
  result.x = ComplexVector(std::move(x));
  result.support = SparseSupport(support, n);
  result.degenerate = false;
  return result;
}

double intensity_objective(const MeasurementEnsemble& ensemble, const Eigen::VectorXcd& x,
                           const Eigen::VectorXd& y) {
  Eigen::VectorXcd z = ensemble.astar() * x;
  Eigen::VectorXd r = z.cwiseAbs2() - y;
  return r.squaredNorm() / static_cast<double>(ensemble.m());
}

Eigen::VectorXcd intensity_gradient(const MeasurementEnsemble& ensemble,
                                    const Eigen::VectorXcd& x, const Eigen::VectorXd& y) {
  Eigen::VectorXcd z = ensemble.astar() * x;
  Eigen::VectorXd r = z.cwiseAbs2() - y;
  Eigen::VectorXcd weighted = r.cast<Complex>().cwiseProduct(z);
  return (4.0 / static_cast<double>(ensemble.m())) * (ensemble.astar().adjoint() * weighted);
}

Eigen::VectorXcd hard_threshold(const Eigen::VectorXcd& x, int k) {
  if (k >= x.size()) return x;
  std::vector<int> idx(static_cast<std::size_t>(x.size()));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return std::norm(x(a)) > std::norm(x(b)); });
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(x.size());
  for (int i = 0; i < k; ++i) out(idx[static_cast<std::size_t>(i)]) = x(idx[static_cast<std::size_t>(i)]);
  return out;
}

RecoveryResult recover(const MeasurementEnsemble& ensemble, const Eigen::VectorXd& y,
                       const SolverConfig& cfg) {
  cfg.validate();
  if (y.size() != ensemble.m()) throw std::invalid_argument("recover: y size mismatch");
  if (cfg.k > ensemble.n()) throw std::invalid_argument("recover: k > n");
  int n = ensemble.n();

  Eigen::VectorXcd x;
  switch (cfg.init) {
    case InitKind::spectral_sparse:
      x = spectral_init(ensemble, y, cfg.k).x.raw();
      break;
    case InitKind::ground_truth_perturbed: {
      if (cfg.ground_truth->size() != n) {
        throw std::invalid_argument("recover: ground truth dimension mismatch");
      }
      x = cfg.ground_truth->raw();
      if (cfg.perturbation != 0.0) {
        RandomStream rs(cfg.seed);
        x += cfg.perturbation * random_unit_gaussian(n, rs);
      }
      break;
    }
    case InitKind::random_start: {
      RandomStream rs(cfg.seed);
      SparseSupport support(sample_support(n, cfg.k, rs), n);
      Eigen::VectorXcd g = Eigen::VectorXcd::Zero(n);
      for (int i : support.indices()) g(i) = rs.complex_gaussian();
      double norm = g.norm();
      if (norm > 0.0) g /= norm;
      x = std::sqrt(std::max(y.mean(), 0.0)) * g;
      break;
    }
  }
  x = hard_threshold(x, cfg.k);

  RecoveryResult result;
  double obj = intensity_objective(ensemble, x, y);
  result.objective_trace.push_back(obj);
  double initial_obj = obj;

  double mean_y = y.mean();
  double base_step =
      (cfg.step_size > 0.0) ? cfg.step_size : 0.05 / std::max(mean_y, 1e-300);

  bool converged = false;
  int it = 0;
  for (it = 1; it <= cfg.max_iters; ++it) {
    Eigen::VectorXcd grad = intensity_gradient(ensemble, x, y);
    double step = base_step;
    Eigen::VectorXcd candidate;
    double cand_obj = 0.0;
    for (int halving = 0;; ++halving) {
      candidate = hard_threshold(x - step * grad, cfg.k);
      cand_obj = intensity_objective(ensemble, candidate, y);
      if (cand_obj <= obj || halving >= 20) break;
      step *= 0.5;
    }
    x = std::move(candidate);
    result.objective_trace.push_back(cand_obj);
    if (initial_obj > 0.0 && cand_obj > 1e6 * initial_obj) {
      throw DivergenceError(std::move(result.objective_trace));
    }
    double change = std::abs(cand_obj - obj);
    obj = cand_obj;
    if (change <= cfg.tol * std::max(obj, 1e-300)) {
      converged = true;
      break;
    }
  }

  result.x_hat = ComplexVector(x);
  result.iterations = std::min(it, cfg.max_iters);
  result.converged = converged;
  result.residual = (apply_map_signal(ensemble, result.x_hat) - y).norm();
  return result;
}

bool residual_check(const MeasurementEnsemble& ensemble, const ComplexVector& x,
                    const Eigen::VectorXd& y, double epsilon) {
  if (x.size() != ensemble.n() || y.size() != ensemble.m()) {
    throw std::invalid_argument("residual_check: dimension mismatch");
  }
  return (apply_map_signal(ensemble, x) - y).norm() <= epsilon + 1e-10;
}

}  // namespace cprlab
