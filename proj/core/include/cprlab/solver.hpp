#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cprlab/core.hpp"
#include "cprlab/measure.hpp"

namespace cprlab {

enum class InitKind { spectral_sparse, ground_truth_perturbed, random_start };

std::string to_string(InitKind kind);

struct SolverConfig {
  int k = 1;
  int max_iters = 2000;
  double step_size = 0.0;  // <= 0 selects the default 0.05 / mean(y)
  double tol = 1e-12;      // relative objective change
  InitKind init = InitKind::spectral_sparse;
  std::uint64_t seed = 0;

  // ground_truth_perturbed only: start from ground_truth + perturbation * g
  // with g a unit complex gaussian vector. Exists for basin and regression
  // tests.
  std::optional<ComplexVector> ground_truth;
  double perturbation = 0.0;

  void validate() const;
};

struct RecoveryResult {
  ComplexVector x_hat = ComplexVector::zeros(1);
  std::vector<double> objective_trace;  // objective_trace[0] is the initial value
  double residual = 0.0;                // || A(x_hat) - y ||_2
  int iterations = 0;
  bool converged = false;
};

/// Thrown when the objective exceeds 1e6 times its initial value.
struct DivergenceError : std::runtime_error {
  explicit DivergenceError(std::vector<double> trace_in)
      : std::runtime_error("recover: objective diverged"), trace(std::move(trace_in)) {}
  std::vector<double> trace;
};

struct SpectralInitResult {
  ComplexVector x = ComplexVector::zeros(1);
  SparseSupport support = SparseSupport({0}, 1);
  bool degenerate = false;  // set when y carries no usable energy
};

/// Support estimate from the top-k measurement-weighted column energies
/// (1/m) sum_j y_j |a_ji|^2, then sqrt(mean(y)) times the leading unit
/// eigenvector (power iteration) of the support-restricted weighted
/// second-moment matrix, embedded in C^n.
SpectralInitResult spectral_init(const MeasurementEnsemble& ensemble, const Eigen::VectorXd& y,
                                 int k);

/// Mean squared intensity misfit (1/m) sum_j (|<a_j, x>|^2 - y_j)^2.
double intensity_objective(const MeasurementEnsemble& ensemble, const Eigen::VectorXcd& x,
                           const Eigen::VectorXd& y);

/// Gradient of intensity_objective with respect to the real and imaginary
/// parts of x, packed as a complex vector: Re/Im of entry i hold
/// d f / d Re(x_i) and d f / d Im(x_i).
Eigen::VectorXcd intensity_gradient(const MeasurementEnsemble& ensemble,
                                    const Eigen::VectorXcd& x, const Eigen::VectorXd& y);

/// Keeps the k largest-modulus entries (lowest index wins ties), zeroing
/// the rest exactly.
Eigen::VectorXcd hard_threshold(const Eigen::VectorXcd& x, int k);

/// Hard-thresholded gradient descent on the intensity misfit with
/// backtracking step halving. The iterate is k-sparse after every step;
/// convergence means the relative objective change dropped below cfg.tol.
RecoveryResult recover(const MeasurementEnsemble& ensemble, const Eigen::VectorXd& y,
                       const SolverConfig& cfg);

/// True iff || A(x) - y ||_2 <= epsilon + 1e-10.
bool residual_check(const MeasurementEnsemble& ensemble, const ComplexVector& x,
                    const Eigen::VectorXd& y, double epsilon);

}  // namespace cprlab
