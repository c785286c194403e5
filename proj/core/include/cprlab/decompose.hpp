#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace cprlab {

/// Witness that a real vector v with ||v||_inf <= theta and ||v||_1 <=
/// s*theta is a convex combination of s-sparse vectors that keep both
/// bounds and stay inside supp(v).
struct DecompositionCertificate {
  std::vector<double> weights;
  std::vector<Eigen::VectorXd> atoms;
  int s = 0;
  double theta = 0.0;
  Eigen::VectorXd source;
};

/// Constructs a certificate for (v, s, theta). Throws std::invalid_argument
/// naming the violated hypothesis when ||v||_inf > theta or ||v||_1 >
/// s*theta (checked with 1e-12 relative slack), or on non-finite entries.
///
/// Construction: entries outside the head (the s-h largest magnitudes, for
/// the smallest h whose tail mass fits in h*theta) are covered by peeling
/// vertices of a capped simplex; every atom carries the head verbatim plus
/// at most h tail coordinates. Each peel either zeroes a tail coordinate or
/// pins one at the cap, so at most 2*dim(v)+2 atoms are emitted.
DecompositionCertificate decompose(const Eigen::VectorXd& v, int s, double theta);

struct CertificateCheck {
  bool ok = true;
  std::string violation;  // first violated clause, empty when ok
};

/// Re-validates every certificate invariant: weights in [0,1] summing to 1,
/// atom sparsity <= s inside supp(v), atom norms within the l1/linf bounds,
/// and exact reconstruction up to 1e-9 * max(1, ||v||_inf).
CertificateCheck verify_certificate(const DecompositionCertificate& cert);

}  // namespace cprlab
