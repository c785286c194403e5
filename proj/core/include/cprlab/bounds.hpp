#pragma once

#include "cprlab/core.hpp"

namespace cprlab {

/// Two-sided isometry constants (c, C) at oversampling factor a for
/// sparsity k. Invariant: 0 < c <= C, a > 0.
struct RipConstants {
  double c = 0.0;
  double C = 0.0;
  double a = 0.0;
  int k = 0;

  void validate() const;
};

struct ConditionCheck {
  bool holds = false;
  double margin = 0.0;  // c - 4C/sqrt(a) - C/a
};

/// Whether c - 4C/sqrt(a) - C/a > 0, with the margin value.
ConditionCheck check_condition(const RipConstants& rc);

/// The sufficiency threshold (8C/c)^2: the margin is positive for every
/// a at or above it.
double sufficiency_threshold(double c, double C);

/// The exact root of the margin in a: the margin vanishes there and is
/// positive beyond. Solves C u^2 + 4C u - c = 0 for u = 1/sqrt(a).
double condition_root(double c, double C);

/// The stability constant (1/a + 4/sqrt(a) + 1) / (c - 4C/sqrt(a) - C/a).
/// Throws when the denominator is not positive.
double c1(const RipConstants& rc);

struct StabilityBound {
  double C1 = 0.0;
  double matrix_bound = 0.0;  // C1 * 2 eps / sqrt(m)
  double vector_bound = 0.0;  // min of the two phase-aligned error bounds
  double epsilon = 0.0;
  int m = 0;
  int n = 0;
  double norm_x0 = 0.0;
};

/// Error bounds at noise level epsilon: the lift-distance bound
/// C1 * 2 eps / sqrt(m) and the phase-aligned vector bound
/// min{ 2 sqrt(2) C1 eps / (sqrt(m) ||x0||),
///      2 sqrt(2 sqrt(2) C1) sqrt(eps) (n/m)^(1/4) }.
/// With norm_x0 = 0 only the second branch applies.
StabilityBound stability_bounds(const RipConstants& rc, double epsilon, int m, int n,
                                double norm_x0);

struct Lemma32Result {
  double lhs = 0.0;  // || xx* - yy* ||_F^2
  double rhs = 0.0;  // max(||x||^2, ||y||^2) * ||x - y||^2 / 2
  bool holds = false;
};

/// Rank-one distance inequality for phase-aligned pairs: requires the
/// inner product <x, y> to be real and non-negative (within 1e-12 scaled
/// slack) and checks lhs >= rhs - 1e-10 with the stronger of the two norm
/// branches on the right side.
Lemma32Result lemma32_check(const ComplexVector& x, const ComplexVector& y);

/// h(a, b, t) = a^4 + b^4 - 2 (ab)^2 t^2 - a^2 (a^2 + b^2 - 2abt) / 2,
/// the gap between the two sides of the rank-one distance inequality for
/// norms a, b and correlation t. Non-negative on a, b >= 0, t in [0, 1].
double h_function(double a_val, double b_val, double t_val);

}  // namespace cprlab
