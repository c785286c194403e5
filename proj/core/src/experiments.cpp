#include "cprlab/experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "cprlab/rng.hpp"

namespace cprlab {

ComplexVector random_sparse_signal(int n, int k, std::uint64_t seed) {
  if (k < 1 || k > n) throw std::invalid_argument("random_sparse_signal: need 1 <= k <= n");
  RandomStream rs(seed);
  SparseSupport support(sample_support(n, k, rs), n);
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n);
  for (int i : support.indices()) x(i) = rs.complex_gaussian();
  double norm = x.norm();
  if (norm == 0.0) {
    x(support.indices()[0]) = Complex(1.0, 0.0);
    norm = 1.0;
  }
  return ComplexVector(x / norm);
}

int measurement_count(int n, int k, double multiplier) {
  if (k < 1 || k > n) throw std::invalid_argument("measurement_count: need 1 <= k <= n");
  double m = std::ceil(multiplier * static_cast<double>(k) *
                       std::log(static_cast<double>(n) / static_cast<double>(k)));
  return std::max(1, static_cast<int>(m));
}

TrialOutcome run_recovery_trial(const RecoveryTrialSpec& spec) {
  ComplexVector x0 = random_sparse_signal(spec.n, spec.k, subseed(spec.seed, 1));
  MeasurementEnsemble ensemble =
      MeasurementEnsemble::sample(spec.n, spec.m, subseed(spec.seed, 2));
  Eigen::VectorXd clean = apply_map_signal(ensemble, x0);
  NoisyMeasurements noisy = add_noise(clean, spec.epsilon, spec.noise, subseed(spec.seed, 3));

  SolverConfig cfg;
  cfg.k = spec.k;
  cfg.max_iters = spec.max_iters;
  cfg.tol = spec.tol;
  cfg.step_size = spec.step_size;
  cfg.init = spec.init;
  cfg.seed = subseed(spec.seed, 4);
  if (spec.init == InitKind::ground_truth_perturbed) cfg.ground_truth = x0;

  RecoveryResult rec = recover(ensemble, noisy.y, cfg);

  TrialOutcome out;
  out.dist_lift = dist_matrix(rec.x_hat, x0);
  out.aligned_error = aligned_distance(rec.x_hat, x0);
  out.x0_norm = x0.norm2();
  out.relative_aligned_error = out.aligned_error / out.x0_norm;
  out.residual = rec.residual;
  out.objective_final = rec.objective_trace.back();
  out.iterations = rec.iterations;
  out.sparsity = static_cast<int>(rec.x_hat.l0());
  out.converged = rec.converged;
  out.residual_ok = residual_check(ensemble, rec.x_hat, noisy.y, spec.epsilon);
  return out;
}

}  // namespace cprlab
