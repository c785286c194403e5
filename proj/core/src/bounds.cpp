#include "cprlab/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace cprlab {

void RipConstants::validate() const {
  if (!(c > 0.0) || !(C >= c)) {
    throw std::invalid_argument("RipConstants: need 0 < c <= C");
  }
  if (!(a > 0.0)) throw std::invalid_argument("RipConstants: need a > 0");
}

ConditionCheck check_condition(const RipConstants& rc) {
  rc.validate();
  double margin = rc.c - 4.0 * rc.C / std::sqrt(rc.a) - rc.C / rc.a;
  return ConditionCheck{margin > 0.0, margin};
}

double sufficiency_threshold(double c, double C) {
  double r = 8.0 * C / c;
  return r * r;
}

double condition_root(double c, double C) {
  // c - 4C u - C u^2 = 0 with u = 1/sqrt(a); take the positive root.
  double u = (-2.0 * C + std::sqrt(4.0 * C * C + c * C)) / C;
  return 1.0 / (u * u);
}

double c1(const RipConstants& rc) {
  ConditionCheck cond = check_condition(rc);
  if (!cond.holds) {
    throw std::domain_error("c1: condition c - 4C/sqrt(a) - C/a > 0 violated");
  }
  double numerator = 1.0 / rc.a + 4.0 / std::sqrt(rc.a) + 1.0;
  return numerator / cond.margin;
}

StabilityBound stability_bounds(const RipConstants& rc, double epsilon, int m, int n,
                                double norm_x0) {
  if (epsilon < 0.0) throw std::invalid_argument("stability_bounds: epsilon must be >= 0");
  if (m < 1) throw std::invalid_argument("stability_bounds: m must be >= 1");
  if (n < 1) throw std::invalid_argument("stability_bounds: n must be >= 1");
  if (norm_x0 < 0.0) throw std::invalid_argument("stability_bounds: norm_x0 must be >= 0");

  StabilityBound sb;
  sb.C1 = c1(rc);
  sb.epsilon = epsilon;
  sb.m = m;
  sb.n = n;
  sb.norm_x0 = norm_x0;

  double sqrt_m = std::sqrt(static_cast<double>(m));
  sb.matrix_bound = sb.C1 * 2.0 * epsilon / sqrt_m;

  double branch2 = 2.0 * std::sqrt(2.0 * std::sqrt(2.0) * sb.C1) * std::sqrt(epsilon) *
                   std::pow(static_cast<double>(n) / static_cast<double>(m), 0.25);
  if (norm_x0 > 0.0) {
    double branch1 = 2.0 * std::sqrt(2.0) * sb.C1 * epsilon / (sqrt_m * norm_x0);
    sb.vector_bound = std::min(branch1, branch2);
  } else {
    sb.vector_bound = branch2;
  }
  return sb;
}

Lemma32Result lemma32_check(const ComplexVector& x, const ComplexVector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("lemma32_check: dimension mismatch");
  Complex ip = x.raw().dot(y.raw());
  double scale = x.norm2() * y.norm2();
  double slack = 1e-12 * std::max(1.0, scale);
  if (ip.real() < -slack || std::abs(ip.imag()) > slack) {
    throw std::invalid_argument("lemma32_check: <x,y> must be real and non-negative; align phases first");
  }

  double nx2 = x.raw().squaredNorm();
  double ny2 = y.raw().squaredNorm();
  double diff2 = (x.raw() - y.raw()).squaredNorm();
  double lhs = nx2 * nx2 + ny2 * ny2 - 2.0 * std::norm(ip);
  lhs = std::max(lhs, 0.0);
  double rhs = 0.5 * std::max(nx2, ny2) * diff2;
  return Lemma32Result{lhs, rhs, lhs >= rhs - 1e-10};
}

double h_function(double a_val, double b_val, double t_val) {
  if (a_val < 0.0 || b_val < 0.0) throw std::invalid_argument("h_function: need a, b >= 0");
  if (t_val < 0.0 || t_val > 1.0) throw std::invalid_argument("h_function: need t in [0, 1]");
  double a2 = a_val * a_val;
  double b2 = b_val * b_val;
  double ab = a_val * b_val;
  return a2 * a2 + b2 * b2 - 2.0 * ab * ab * t_val * t_val -
         0.5 * a2 * (a2 + b2 - 2.0 * ab * t_val);
}

}  // namespace cprlab
