#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cprlab/bounds.hpp"
#include "cprlab/core.hpp"
#include "cprlab/rng.hpp"
#include "support/rational.hpp"

using namespace cprlab;
using testsupport::Fraction;

namespace {

RipConstants rc(double c, double C, double a) {
  RipConstants out;
  out.c = c;
  out.C = C;
  out.a = a;
  return out;
}

ComplexVector random_vector(Eigen::Index dim, double scale, RandomStream& rs) {
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = scale * rs.complex_gaussian();
  return ComplexVector(v);
}

}  // namespace

TEST_CASE("check_condition on the reference triples") {
  double threshold = sufficiency_threshold(0.12, 2.45);
  CHECK(threshold == doctest::Approx(26677.77).epsilon(1e-4));

  ConditionCheck at_threshold = check_condition(rc(0.12, 2.45, threshold * (1.0 + 1e-6)));
  CHECK(at_threshold.holds);
  CHECK(at_threshold.margin == doctest::Approx(0.0599).epsilon(1e-2));

  ConditionCheck easy = check_condition(rc(1.0, 1.0, 100.0));
  CHECK(easy.holds);
  CHECK(easy.margin == doctest::Approx(0.59).epsilon(1e-12));

  ConditionCheck tight = check_condition(rc(0.12, 2.45, 1.0));
  CHECK_FALSE(tight.holds);
  CHECK(tight.margin < 0.0);
}

TEST_CASE("margin at the sufficiency threshold is positive and equals c/2 - C/a") {
  for (auto [c, C] : {std::pair{0.12, 2.45}, std::pair{0.5, 1.0}, std::pair{1.0, 1.0}}) {
    double a = sufficiency_threshold(c, C);
    ConditionCheck cond = check_condition(rc(c, C, a));
    CHECK(cond.margin == doctest::Approx(c / 2.0 - C / a).epsilon(1e-12));
    CHECK(cond.margin > 0.0);
    CHECK(cond.holds);
  }
}

TEST_CASE("margin vanishes at the exact root and flips sign around it") {
  for (auto [c, C] : {std::pair{0.12, 2.45}, std::pair{0.3, 0.9}, std::pair{1.0, 1.0}}) {
    double root = condition_root(c, C);
    ConditionCheck at_root = check_condition(rc(c, C, root));
    CHECK(std::abs(at_root.margin) <= C / root);
    CHECK(std::abs(at_root.margin) <= 1e-12 * c);
    CHECK(check_condition(rc(c, C, root * 1.01)).holds);
    CHECK_FALSE(check_condition(rc(c, C, root * 0.99)).holds);
    // The paper-style threshold is far above the root, so the condition
    // already holds there.
    CHECK(sufficiency_threshold(c, C) > root);
  }
}

TEST_CASE("c1 reference value and error path") {
  CHECK(c1(rc(1.0, 1.0, 100.0)) == doctest::Approx(141.0 / 59.0).epsilon(1e-14));
  CHECK_THROWS_AS(c1(rc(0.12, 2.45, 1.0)), std::domain_error);
  CHECK_THROWS_AS(check_condition(rc(-0.1, 1.0, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(check_condition(rc(0.5, 0.4, 1.0)), std::invalid_argument);
}

TEST_CASE("c1 matches the exact rational oracle on 20 rational triples") {
  int checked = 0;
  for (int i = 0; i < 20; ++i) {
    // Rational (c, C, sqrt(a)) with margin guaranteed positive.
    Fraction c(static_cast<long long>(i % 4) + 1, 4);
    Fraction C = c * Fraction(static_cast<long long>(i % 3) + 1);
    Fraction r = Fraction(8) * C / c * Fraction(static_cast<long long>(i % 5) + 5, 4);
    Fraction a = r * r;

    Fraction margin = testsupport::exact_margin(c, C, r);
    REQUIRE(margin.positive());
    Fraction expected_c1 = testsupport::exact_c1(c, C, r);

    RipConstants constants = rc(c.to_double(), C.to_double(), a.to_double());
    ConditionCheck cond = check_condition(constants);
    CHECK(cond.holds == margin.positive());
    CHECK(cond.margin == doctest::Approx(margin.to_double()).epsilon(1e-12));
    CHECK(c1(constants) == doctest::Approx(expected_c1.to_double()).epsilon(1e-12));
    ++checked;
  }
  CHECK(checked == 20);
}

TEST_CASE("c1 decreases in a toward 1/c and increases in C") {
  double previous = std::numeric_limits<double>::infinity();
  for (double a = 1e4; a <= 1e10; a *= 10.0) {
    double value = c1(rc(0.12, 2.45, a));
    CHECK(value < previous);
    previous = value;
  }
  CHECK(previous == doctest::Approx(1.0 / 0.12).epsilon(1e-2));

  double prev_c1 = 0.0;
  for (double C = 0.5; C <= 2.5; C += 0.5) {
    double value = c1(rc(0.5, C, 1e6));
    CHECK(value > prev_c1);
    prev_c1 = value;
  }
}

TEST_CASE("stability bounds at the reference point") {
  StabilityBound sb = stability_bounds(rc(1.0, 1.0, 100.0), 1.0, 100, 64, 1.0);
  CHECK(sb.C1 == doctest::Approx(141.0 / 59.0).epsilon(1e-14));
  CHECK(sb.matrix_bound == doctest::Approx(282.0 / 590.0).epsilon(1e-14));
  CHECK(sb.vector_bound > 0.0);

  StabilityBound zero = stability_bounds(rc(1.0, 1.0, 100.0), 0.0, 100, 64, 1.0);
  CHECK(zero.matrix_bound == 0.0);
  CHECK(zero.vector_bound == 0.0);
}

TEST_CASE("matrix bound scales as 1/sqrt(m) and linearly in eps") {
  RipConstants constants = rc(0.12, 2.45, 2.0 * sufficiency_threshold(0.12, 2.45));
  StabilityBound base = stability_bounds(constants, 0.25, 100, 64, 1.0);
  StabilityBound doubled_m = stability_bounds(constants, 0.25, 200, 64, 1.0);
  CHECK(doubled_m.matrix_bound / base.matrix_bound ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  StabilityBound scaled_eps = stability_bounds(constants, 2.5, 100, 64, 1.0);
  CHECK(scaled_eps.matrix_bound / base.matrix_bound == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("vector bound second branch scales as sqrt(eps)") {
  RipConstants constants = rc(1.0, 1.0, 100.0);
  // Tiny signal norm forces the sqrt(eps) branch.
  StabilityBound b1 = stability_bounds(constants, 0.01, 100, 64, 1e-12);
  StabilityBound b2 = stability_bounds(constants, 0.04, 100, 64, 1e-12);
  CHECK(b2.vector_bound / b1.vector_bound == doctest::Approx(2.0).epsilon(1e-12));

  StabilityBound no_norm = stability_bounds(constants, 0.01, 100, 64, 0.0);
  CHECK(no_norm.vector_bound == doctest::Approx(b1.vector_bound).epsilon(1e-9));
}

TEST_CASE("vector bound takes the minimum branch") {
  RipConstants constants = rc(1.0, 1.0, 100.0);
  double eps = 0.1;
  int m = 100, n = 64;
  double norm = 2.0;
  StabilityBound sb = stability_bounds(constants, eps, m, n, norm);
  double C1v = 141.0 / 59.0;
  double branch1 = 2.0 * std::sqrt(2.0) * C1v * eps / (std::sqrt(100.0) * norm);
  double branch2 = 2.0 * std::sqrt(2.0 * std::sqrt(2.0) * C1v) * std::sqrt(eps) *
                   std::pow(64.0 / 100.0, 0.25);
  CHECK(sb.vector_bound == doctest::Approx(std::min(branch1, branch2)).epsilon(1e-14));
}

TEST_CASE("rank-one distance inequality on hand cases") {
  ComplexVector e1{{1.0, 0.0}, {0.0, 0.0}};
  ComplexVector e2{{0.0, 0.0}, {1.0, 0.0}};

  Lemma32Result same = lemma32_check(e1, e1);
  CHECK(same.lhs == 0.0);
  CHECK(same.rhs == 0.0);
  CHECK(same.holds);

  Lemma32Result ortho = lemma32_check(e1, e2);
  CHECK(ortho.lhs == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(ortho.rhs == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ortho.holds);

  ComplexVector stretched{{1.1, 0.0}, {0.0, 0.0}};
  Lemma32Result radial = lemma32_check(e1, stretched);
  CHECK(radial.lhs == doctest::Approx(0.0441).epsilon(1e-12));
  CHECK(radial.rhs == doctest::Approx(0.00605).epsilon(1e-12));
  CHECK(radial.holds);
}

TEST_CASE("rank-one distance inequality rejects misaligned pairs") {
  ComplexVector x{{1.0, 0.0}};
  ComplexVector neg{{-1.0, 0.0}};
  CHECK_THROWS_AS(lemma32_check(x, neg), std::invalid_argument);
  ComplexVector rotated{{0.0, 1.0}};
  CHECK_THROWS_AS(lemma32_check(x, rotated), std::invalid_argument);
  ComplexVector shorter{{1.0, 0.0}};
  ComplexVector longer{{1.0, 0.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(lemma32_check(shorter, longer), std::invalid_argument);
}

TEST_CASE("rank-one distance inequality holds on random aligned pairs, both branches") {
  RandomStream rs(404);
  for (int trial = 0; trial < 20000; ++trial) {
    Eigen::Index dim = 1 + static_cast<Eigen::Index>(rs.uniform_index(20));
    double scale_x = 10.0 * rs.uniform01();
    double scale_y = 10.0 * rs.uniform01();
    ComplexVector x = random_vector(dim, scale_x, rs);
    ComplexVector y0 = random_vector(dim, scale_y, rs);
    ComplexVector y = phase_align(y0, x).aligned;
    Lemma32Result forward = lemma32_check(x, y);
    CHECK(forward.holds);
    Lemma32Result swapped = lemma32_check(y, x);
    CHECK(swapped.holds);
  }
}

TEST_CASE("lemma gap equals h(a, b, t) on aligned pairs") {
  RandomStream rs(405);
  for (int trial = 0; trial < 1000; ++trial) {
    ComplexVector x = random_vector(6, 2.0, rs);
    ComplexVector y = phase_align(random_vector(6, 2.0, rs), x).aligned;
    double a = x.norm2();
    double b = y.norm2();
    Complex ip = x.raw().dot(y.raw());
    double t = (a > 0 && b > 0) ? ip.real() / (a * b) : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    Lemma32Result res = lemma32_check(x, y);
    // lhs - (1/2)||x||^2 ||x-y||^2 is exactly the h gap.
    double gap = res.lhs - 0.5 * a * a * (x.raw() - y.raw()).squaredNorm();
    double expected = h_function(a, b, t);
    CHECK(gap == doctest::Approx(expected).epsilon(1e-7));
  }
}

TEST_CASE("h function endpoints and samples") {
  for (double a = 0.0; a <= 2.0; a += 0.5) {
    CHECK(h_function(a, a, 1.0) == doctest::Approx(0.0).epsilon(1e-12));
  }
  CHECK(h_function(1.0, 0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(h_function(1.0, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(h_function(-1.0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(h_function(1.0, 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("h endpoint identities") {
  RandomStream rs(406);
  for (int trial = 0; trial < 200; ++trial) {
    double a = 3.0 * rs.uniform01();
    double b = 3.0 * rs.uniform01();
    double at0 = 0.5 * std::pow(a * a - 0.5 * b * b, 2) + 7.0 / 8.0 * std::pow(b, 4);
    CHECK(h_function(a, b, 0.0) ==
          doctest::Approx(at0).epsilon(1e-10));
    double at1 = std::pow(a - b, 2) * (0.5 * a * a + b * b + 2.0 * a * b);
    CHECK(h_function(a, b, 1.0) == doctest::Approx(at1).epsilon(1e-10));
  }
}

TEST_CASE("h is non-negative on a coarse domain grid") {
  for (int ia = 0; ia <= 60; ++ia) {
    for (int ib = 0; ib <= 60; ++ib) {
      for (int it = 0; it <= 20; ++it) {
        double a = 3.0 * ia / 60.0;
        double b = 3.0 * ib / 60.0;
        double t = it / 20.0;
        CHECK(h_function(a, b, t) >= -1e-12);
      }
    }
  }
}
