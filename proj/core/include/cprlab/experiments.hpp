#pragma once

#include <cstdint>

#include "cprlab/core.hpp"
#include "cprlab/measure.hpp"
#include "cprlab/solver.hpp"

namespace cprlab {

/// Unit-norm k-sparse signal: uniform random support, complex gaussian
/// entries, normalized.
ComplexVector random_sparse_signal(int n, int k, std::uint64_t seed);

/// ceil(multiplier * k * ln(n/k)), clamped to at least 1.
int measurement_count(int n, int k, double multiplier);

/// One seeded end-to-end recovery experiment. The one trial seed expands
/// into independent sub-streams for the signal, the ensemble, the noise
/// and the solver, so trials parallelize without coordination.
struct RecoveryTrialSpec {
  int n = 0;
  int k = 0;
  int m = 0;
  double epsilon = 0.0;
  NoiseKind noise = NoiseKind::none;
  std::uint64_t seed = 0;
  InitKind init = InitKind::spectral_sparse;
  int max_iters = 2000;
  double tol = 1e-12;
  double step_size = 0.0;
};

struct TrialOutcome {
  double dist_lift = 0.0;               // || x^ x^* - x0 x0* ||_F
  double aligned_error = 0.0;           // min_{|c|=1} || c x^ - x0 ||_2
  double relative_aligned_error = 0.0;  // aligned_error / ||x0||_2
  double residual = 0.0;
  double objective_final = 0.0;
  int iterations = 0;
  int sparsity = 0;
  bool converged = false;
  bool residual_ok = false;  // || A(x^) - y ||_2 <= epsilon + 1e-10
  double x0_norm = 0.0;
};

TrialOutcome run_recovery_trial(const RecoveryTrialSpec& spec);

}  // namespace cprlab
