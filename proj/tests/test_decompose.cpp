#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "cprlab/decompose.hpp"
#include "cprlab/rng.hpp"

using namespace cprlab;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> entries) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (double e : entries) v(i++) = e;
  return v;
}

// Random instance satisfying the hypotheses by construction.
struct Instance {
  Eigen::VectorXd v;
  int s;
  double theta;
};

Instance random_instance(RandomStream& rs) {
  int dim = 1 + static_cast<int>(rs.uniform_index(50));
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  for (int i = 0; i < dim; ++i) {
    if (rs.uniform01() < 0.7) {
      double mag = rs.uniform01() * 3.0;
      v(i) = (rs.uniform01() < 0.5) ? -mag : mag;
    }
  }
  int s = 1 + static_cast<int>(rs.uniform_index(static_cast<std::uint64_t>(dim)));
  double vinf = v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
  double v1 = v.cwiseAbs().sum();
  double floor_theta = std::max(vinf, v1 / static_cast<double>(s));
  double theta = std::max(floor_theta, 1e-9) * (1.0 + rs.uniform01());
  return {v, s, theta};
}

void check_certificate_strong(const DecompositionCertificate& cert) {
  CertificateCheck check = verify_certificate(cert);
  INFO("violation: " << check.violation);
  REQUIRE(check.ok);
  // Atom count guard and the l2 consequence used downstream.
  CHECK(static_cast<long>(cert.atoms.size()) <= 4 * static_cast<long>(cert.source.size()) + 4);
  double v1 = cert.source.cwiseAbs().sum();
  double l2_cap = std::sqrt(v1 * cert.theta) + 1e-8;
  for (const auto& atom : cert.atoms) {
    CHECK(atom.norm() <= l2_cap);
    for (Eigen::Index i = 0; i < atom.size(); ++i) {
      if (cert.source(i) == 0.0) CHECK(atom(i) == 0.0);
    }
  }
}

}  // namespace

TEST_CASE("an already s-sparse vector is its own certificate") {
  Eigen::VectorXd v = vec({0.5, 0.0, -0.25, 0.0});
  DecompositionCertificate cert = decompose(v, 2, 1.0);
  REQUIRE(cert.atoms.size() == 1);
  CHECK(cert.weights[0] == 1.0);
  CHECK(cert.atoms[0] == v);
  check_certificate_strong(cert);
}

TEST_CASE("the (1, 0.5, 0.5) example decomposes into two atoms") {
  Eigen::VectorXd v = vec({1.0, 0.5, 0.5});
  DecompositionCertificate cert = decompose(v, 2, 1.0);
  check_certificate_strong(cert);
  REQUIRE(cert.atoms.size() == 2);
  CHECK(cert.weights[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cert.weights[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cert.atoms[0] == vec({1.0, 1.0, 0.0}));
  CHECK(cert.atoms[1] == vec({1.0, 0.0, 1.0}));
}

TEST_CASE("hypothesis failures are reported by name") {
  CHECK_THROWS_WITH_AS(decompose(vec({1.0, 1.0}), 1, 1.0),
                       doctest::Contains("||v||_1"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(decompose(vec({2.0, 0.0}), 1, 1.0),
                       doctest::Contains("||v||_inf"), std::invalid_argument);
  Eigen::VectorXd bad = vec({1.0, 0.0});
  bad(1) = std::nan("");
  CHECK_THROWS_AS(decompose(bad, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(decompose(vec({0.5}), 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(decompose(vec({0.5}), 1, 0.0), std::invalid_argument);
}

TEST_CASE("1000 random valid instances all certify") {
  RandomStream rs(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    Instance inst = random_instance(rs);
    DecompositionCertificate cert = decompose(inst.v, inst.s, inst.theta);
    check_certificate_strong(cert);
  }
}

TEST_CASE("exact boundary ||v||_1 = s*theta succeeds") {
  // Uniform magnitudes: d entries of c, theta = d*c/s makes the l1
  // hypothesis an exact equality.
  for (int d : {5, 12, 30}) {
    for (int s : {1, 2, 3}) {
      double c = 0.7;
      Eigen::VectorXd v = Eigen::VectorXd::Constant(d, c);
      for (int i = 1; i < d; i += 2) v(i) = -c;
      double theta = static_cast<double>(d) * c / static_cast<double>(s);
      REQUIRE(v.cwiseAbs().sum() == doctest::Approx(s * theta).epsilon(1e-15));
      DecompositionCertificate cert = decompose(v, s, theta);
      check_certificate_strong(cert);
    }
  }
}

TEST_CASE("alternating head/tail magnitudes with a tight linf bound") {
  // Entries at the cap force head coordinates into every atom.
  Eigen::VectorXd v = vec({1.0, 0.3, 0.3, 0.2, 0.1, 0.05});
  DecompositionCertificate cert = decompose(v, 3, 1.0);
  check_certificate_strong(cert);
  CHECK(cert.atoms.size() >= 2);
}

TEST_CASE("verify_certificate flags each violated clause") {
  Eigen::VectorXd v = vec({1.0, 0.5, 0.5});
  DecompositionCertificate good = decompose(v, 2, 1.0);

  DecompositionCertificate bad_weight = good;
  bad_weight.weights[0] = 1.2;
  CHECK(verify_certificate(bad_weight).violation == "weight out of [0,1]");

  DecompositionCertificate bad_sum = good;
  bad_sum.weights[0] = 0.25;
  CHECK(verify_certificate(bad_sum).violation == "weights do not sum to 1");

  DecompositionCertificate bad_recon = good;
  bad_recon.atoms[0](0) += 0.5;
  CertificateCheck recon_check = verify_certificate(bad_recon);
  CHECK_FALSE(recon_check.ok);

  DecompositionCertificate bad_sparsity = good;
  bad_sparsity.s = 1;
  CHECK(verify_certificate(bad_sparsity).violation == "atom sparsity exceeds s");

  DecompositionCertificate bad_support = good;
  bad_support.source(1) = 0.0;  // first atom is (1,1,0): entry 1 now escapes
  CHECK(verify_certificate(bad_support).violation == "atom support outside source support");

  DecompositionCertificate bad_linf = good;
  bad_linf.theta = 0.5;
  CHECK(verify_certificate(bad_linf).violation == "atom linf exceeds theta");

  DecompositionCertificate mismatch = good;
  mismatch.atoms[0](1) = 0.0;
  mismatch.atoms[1](2) = 0.0;
  CHECK(verify_certificate(mismatch).violation == "reconstruction mismatch");
}

TEST_CASE("zero vector certifies trivially") {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(4);
  DecompositionCertificate cert = decompose(v, 2, 1.0);
  check_certificate_strong(cert);
  REQUIRE(cert.atoms.size() == 1);
  CHECK(cert.atoms[0] == v);
}

TEST_CASE("decomposition is deterministic") {
  RandomStream rs(99);
  Instance inst = random_instance(rs);
  DecompositionCertificate a = decompose(inst.v, inst.s, inst.theta);
  DecompositionCertificate b = decompose(inst.v, inst.s, inst.theta);
  REQUIRE(a.atoms.size() == b.atoms.size());
  for (std::size_t i = 0; i < a.atoms.size(); ++i) {
    CHECK(a.weights[i] == b.weights[i]);
    CHECK(a.atoms[i] == b.atoms[i]);
  }
}
