#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cprlab/core.hpp"
#include "cprlab/measure.hpp"

namespace cprlab {

/// Element of the constraint class: unit-Frobenius, rank <= 2 Hermitian
/// matrix with all rows supported on a common index set of size <= k,
/// held in eigenpair form X = lambda1 u1 u1* + lambda2 u2 u2*. The second
/// eigenpair is absent for rank-one elements (k = 1 admits no orthonormal
/// pair inside the support).
struct LowRankSparseHermitian {
  double lambda1 = 1.0;
  double lambda2 = 0.0;
  ComplexVector u1 = ComplexVector::unit(1, 0);
  std::optional<ComplexVector> u2;
  SparseSupport support = SparseSupport({0}, 1);

  /// Throws unless the eigenpair invariants hold: unit eigenvectors,
  /// orthogonality within 1e-10, lambda1^2 + lambda2^2 = 1 within 1e-12,
  /// vectors supported inside `support`.
  void validate() const;

  int n() const { return support.ambient_dim(); }
};

/// Draws an element of the class: support uniform over k-subsets, (u1,u2)
/// an orthonormalized complex gaussian pair on the support, (lambda1,
/// lambda2) uniform on the unit circle. k = 1 collapses to a rank-one
/// element with lambda1 = +/-1.
LowRankSparseHermitian sample_X(int n, int k, std::uint64_t seed);

/// Dense realization lambda1 u1 u1* + lambda2 u2 u2*.
HermitianMatrix realize(const LowRankSparseHermitian& xp);

/// (1/m) || A(X) ||_1 evaluated through the eigenpair form,
/// (1/m) sum_j | lambda1 |<u1,a_j>|^2 + lambda2 |<u2,a_j>|^2 |.
double map_ratio(const MeasurementEnsemble& ensemble, const LowRankSparseHermitian& xp);

/// Empirical two-sided isometry ratios over a sample of the constraint
/// class. This is a necessary-condition probe of the isometry property,
/// not a certificate: it reports extremes over the sampled elements only.
struct RipEstimate {
  double lower_ratio = 0.0;
  double upper_ratio = 0.0;
  long num_samples = 0;
  LowRankSparseHermitian worst_low;
  LowRankSparseHermitian worst_high;
  int n = 0;
  int m = 0;
  int k = 0;
  std::uint64_t seed = 0;
};

/// Evaluates num_samples elements of the class against the ensemble and
/// records the extreme ratios with their witnesses. The first draws are
/// deterministic forced probes (rank-one, balanced-sign trace-zero, and
/// canonical-support elements) that cover the corners random sampling
/// reaches slowly; the remainder are random. Sample i is generated from
/// subseed(seed, i), so results do not depend on worker count.
RipEstimate estimate_rip(const MeasurementEnsemble& ensemble, int k, long num_samples,
                         std::uint64_t seed);

/// JSON record of an estimate for the CLI reporter.
std::string to_json_record(const RipEstimate& estimate);

/// E |z1^2 + z2^2 + t z3^2 + t z4^2| for z_i ~ N(0,1), t in [-1, 0]:
/// 2 (1 + t^2) / (1 - t).
double lemma22_closed_form(double t);

struct MonteCarloMean {
  double mean = 0.0;
  double std_error = 0.0;
  long num_samples = 0;
};

/// Sample mean of |z1^2 + z2^2 + t z3^2 + t z4^2| with z_i ~ N(0,1);
/// the independent check for lemma22_closed_form.
MonteCarloMean lemma22_monte_carlo(double t, long num_samples, std::uint64_t seed);

/// Parametrizes the eigenvalue ratio t = lambda2/lambda1 with |t| <= 1 and
/// the unit-norm constraint lambda1^2 (1 + t^2) = 1.
struct ExpectationCase {
  double t = 0.0;
  double lambda1_abs = 1.0;

  static ExpectationCase from_t(double t);
  void validate() const;
};

struct XiEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  bool in_bounds = false;
};

/// Monte Carlo estimate of E |lambda1| |z1^2 + z2^2 + t z3^2 + t z4^2|
/// with z_i ~ N(0, 1/2); in_bounds checks the [0.57, 2] band within three
/// standard errors.
XiEstimate xi_expectation_bounds(const ExpectationCase& c, long num_samples, std::uint64_t seed);

}  // namespace cprlab
