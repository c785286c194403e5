#include "cprlab/ripcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "cprlab/parallel.hpp"
#include "cprlab/rng.hpp"

namespace cprlab {

namespace {

constexpr double kSqrtHalf = 0.70710678118654752440;

Eigen::VectorXcd embed(const Eigen::VectorXcd& block, const SparseSupport& support) {
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(support.ambient_dim());
  const auto& idx = support.indices();
  for (std::size_t i = 0; i < idx.size(); ++i) full(idx[i]) = block(static_cast<Eigen::Index>(i));
  return full;
}

/// Orthonormalizes a k x 2 complex block by modified Gram-Schmidt with one
/// re-orthogonalization pass. Returns false when the block is too close to
/// singular (condition estimate above 1e8) and should be redrawn.
bool orthonormalize_pair(Eigen::VectorXcd& g1, Eigen::VectorXcd& g2) {
  double n1 = g1.norm();
  double n2 = g2.norm();
  if (n1 == 0.0 || n2 == 0.0) return false;
  // Condition estimate from the 2x2 Gram matrix of the raw block.
  Complex cross = g1.dot(g2);
  double a = g1.squaredNorm();
  double d = g2.squaredNorm();
  double tr = a + d;
  double det = a * d - std::norm(cross);
  if (det <= 0.0) return false;
  double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
  double smin = (tr - disc) / 2.0;
  double smax = (tr + disc) / 2.0;
  if (smin <= 0.0 || std::sqrt(smax / smin) > 1e8) return false;

  g1 /= n1;
  g2 -= g1.dot(g2) * g1;
  g2 -= g1.dot(g2) * g1;  // second pass restores orthogonality lost to round-off
  double r = g2.norm();
  if (r == 0.0) return false;
  g2 /= r;
  return true;
}

struct ChunkedMean {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Deterministic chunked Monte Carlo mean of fn(stream) over num_samples
/// draws. Chunk c uses subseed(seed, c); accumulators reduce in chunk
/// order, so the value is independent of worker count.
template <typename Fn>
ChunkedMean chunked_mean(long num_samples, std::uint64_t seed, Fn&& fn) {
  if (num_samples < 1) throw std::invalid_argument("Monte Carlo: need num_samples >= 1");
  constexpr long kChunk = 1 << 14;
  long num_chunks = (num_samples + kChunk - 1) / kChunk;
  std::vector<double> sums(static_cast<std::size_t>(num_chunks), 0.0);
  std::vector<double> sqsums(static_cast<std::size_t>(num_chunks), 0.0);
  parallel_for(static_cast<std::size_t>(num_chunks), [&](std::size_t c) {
    RandomStream rs(subseed(seed, static_cast<std::uint64_t>(c)));
    long begin = static_cast<long>(c) * kChunk;
    long end = std::min(begin + kChunk, num_samples);
    double sum = 0.0, sq = 0.0;
    for (long i = begin; i < end; ++i) {
      double value = fn(rs);
      sum += value;
      sq += value * value;
    }
    sums[c] = sum;
    sqsums[c] = sq;
  });
  double total = 0.0, total_sq = 0.0;
  for (long c = 0; c < num_chunks; ++c) {
    total += sums[static_cast<std::size_t>(c)];
    total_sq += sqsums[static_cast<std::size_t>(c)];
  }
  double n = static_cast<double>(num_samples);
  double mean = total / n;
  double variance = std::max(total_sq / n - mean * mean, 0.0);
  ChunkedMean out;
  out.mean = mean;
  out.std_error = std::sqrt(variance / n);
  return out;
}

LowRankSparseHermitian forced_probe(int n, int k, const SparseSupport& support, double lambda1,
                                    double lambda2, bool gaussian_pair, std::uint64_t seed) {
  LowRankSparseHermitian xp;
  xp.support = support;
  xp.lambda1 = lambda1;
  xp.lambda2 = lambda2;
  const auto& idx = support.indices();
  if (!gaussian_pair || k < 2) {
    xp.u1 = ComplexVector::unit(n, idx[0]);
    if (k >= 2 && xp.lambda2 != 0.0) {
      xp.u2 = ComplexVector::unit(n, idx[1]);
    } else {
      xp.lambda2 = 0.0;
      xp.lambda1 = (xp.lambda1 >= 0.0) ? 1.0 : -1.0;
      xp.u2.reset();
    }
    return xp;
  }
  RandomStream rs(seed);
  Eigen::VectorXcd g1(k), g2(k);
  for (;;) {
    for (int i = 0; i < k; ++i) g1(i) = rs.complex_gaussian();
    for (int i = 0; i < k; ++i) g2(i) = rs.complex_gaussian();
    if (orthonormalize_pair(g1, g2)) break;
  }
  xp.u1 = ComplexVector(embed(g1, support));
  xp.u2 = ComplexVector(embed(g2, support));
  return xp;
}

std::vector<LowRankSparseHermitian> forced_probes(int n, int k, std::uint64_t seed) {
  std::vector<SparseSupport> supports;
  std::vector<int> first(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) first[static_cast<std::size_t>(i)] = i;
  supports.emplace_back(first, n);
  if (k < n) {
    std::vector<int> last(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) last[static_cast<std::size_t>(i)] = n - k + i;
    supports.emplace_back(last, n);
  }
  {
    RandomStream rs(subseed(seed, 0xF0F0F0F0ULL));
    supports.emplace_back(sample_support(n, k, rs), n);
  }

  // (lambda1, lambda2) corners: rank-one, balanced trace-zero, balanced.
  const double pairs[3][2] = {{1.0, 0.0}, {kSqrtHalf, -kSqrtHalf}, {kSqrtHalf, kSqrtHalf}};
  std::vector<LowRankSparseHermitian> probes;
  std::uint64_t probe_index = 0;
  for (const auto& support : supports) {
    for (const auto& lam : pairs) {
      for (bool gaussian_pair : {false, true}) {
        if (k == 1 && (lam[1] != 0.0 || gaussian_pair)) continue;
        probes.push_back(forced_probe(n, k, support, lam[0], lam[1], gaussian_pair,
                                      subseed(seed, 0xBEEF0000ULL + probe_index)));
        ++probe_index;
      }
    }
  }
  return probes;
}

}  // namespace

void LowRankSparseHermitian::validate() const {
  if (u1.size() != support.ambient_dim()) {
    throw std::invalid_argument("LowRankSparseHermitian: u1 dimension mismatch");
  }
  if (std::abs(u1.norm2() - 1.0) > 1e-10) {
    throw std::invalid_argument("LowRankSparseHermitian: u1 not unit norm");
  }
  double lambda_norm = lambda1 * lambda1 + lambda2 * lambda2;
  if (std::abs(lambda_norm - 1.0) > 1e-12) {
    throw std::invalid_argument("LowRankSparseHermitian: lambda1^2 + lambda2^2 != 1");
  }
  auto check_supported = [&](const ComplexVector& u) {
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      if (std::abs(u[i]) > 0.0 && !support.contains(static_cast<int>(i))) {
        throw std::invalid_argument("LowRankSparseHermitian: eigenvector escapes support");
      }
    }
  };
  check_supported(u1);
  if (u2.has_value()) {
    if (u2->size() != support.ambient_dim()) {
      throw std::invalid_argument("LowRankSparseHermitian: u2 dimension mismatch");
    }
    if (std::abs(u2->norm2() - 1.0) > 1e-10) {
      throw std::invalid_argument("LowRankSparseHermitian: u2 not unit norm");
    }
    if (std::abs(u1.raw().dot(u2->raw())) > 1e-10) {
      throw std::invalid_argument("LowRankSparseHermitian: u1, u2 not orthogonal");
    }
    check_supported(*u2);
  } else if (lambda2 != 0.0) {
    throw std::invalid_argument("LowRankSparseHermitian: lambda2 != 0 without u2");
  }
}

LowRankSparseHermitian sample_X(int n, int k, std::uint64_t seed) {
  if (k < 1 || k > n) throw std::invalid_argument("sample_X: need 1 <= k <= n");
  RandomStream rs(seed);
  SparseSupport support(sample_support(n, k, rs), n);

  LowRankSparseHermitian xp;
  xp.support = support;
  if (k == 1) {
    // One-dimensional support forces rank one: a random phase on the
    // basis vector and a random sign on the eigenvalue.
    Complex phase = std::polar(1.0, 2.0 * std::numbers::pi * rs.uniform01());
    Eigen::VectorXcd u = Eigen::VectorXcd::Zero(n);
    u(support.indices()[0]) = phase;
    xp.u1 = ComplexVector(std::move(u));
    xp.lambda1 = (rs.uniform01() < 0.5) ? -1.0 : 1.0;
    xp.lambda2 = 0.0;
    return xp;
  }

  Eigen::VectorXcd g1(k), g2(k);
  for (;;) {
    for (int i = 0; i < k; ++i) g1(i) = rs.complex_gaussian();
    for (int i = 0; i < k; ++i) g2(i) = rs.complex_gaussian();
    if (orthonormalize_pair(g1, g2)) break;
  }
  xp.u1 = ComplexVector(embed(g1, support));
  xp.u2 = ComplexVector(embed(g2, support));
  double angle = 2.0 * std::numbers::pi * rs.uniform01();
  xp.lambda1 = std::cos(angle);
  xp.lambda2 = std::sin(angle);
  return xp;
}

HermitianMatrix realize(const LowRankSparseHermitian& xp) {
  Eigen::MatrixXcd dense = xp.lambda1 * (xp.u1.raw() * xp.u1.raw().adjoint());
  if (xp.u2.has_value()) {
    dense += xp.lambda2 * (xp.u2->raw() * xp.u2->raw().adjoint());
  }
  return HermitianMatrix::from_dense(dense, 1e-9);
}

double map_ratio(const MeasurementEnsemble& ensemble, const LowRankSparseHermitian& xp) {
  if (xp.n() != ensemble.n()) throw std::invalid_argument("map_ratio: dimension mismatch");
  Eigen::VectorXcd z1 = ensemble.astar() * xp.u1.raw();
  double sum = 0.0;
  if (xp.u2.has_value()) {
    Eigen::VectorXcd z2 = ensemble.astar() * xp.u2->raw();
    for (Eigen::Index j = 0; j < z1.size(); ++j) {
      sum += std::abs(xp.lambda1 * std::norm(z1(j)) + xp.lambda2 * std::norm(z2(j)));
    }
  } else {
    for (Eigen::Index j = 0; j < z1.size(); ++j) {
      sum += std::abs(xp.lambda1 * std::norm(z1(j)));
    }
  }
  return sum / static_cast<double>(ensemble.m());
}

RipEstimate estimate_rip(const MeasurementEnsemble& ensemble, int k, long num_samples,
                         std::uint64_t seed) {
  if (num_samples < 1) throw std::invalid_argument("estimate_rip: need num_samples >= 1");
  if (k > ensemble.n()) throw std::invalid_argument("estimate_rip: k > n");
  int n = ensemble.n();

  std::vector<LowRankSparseHermitian> probes = forced_probes(n, k, seed);
  if (static_cast<long>(probes.size()) > num_samples) {
    probes.resize(static_cast<std::size_t>(num_samples));
  }
  long forced = static_cast<long>(probes.size());

  std::vector<double> ratios(static_cast<std::size_t>(num_samples));
  std::vector<LowRankSparseHermitian> samples(static_cast<std::size_t>(num_samples));
  parallel_for(static_cast<std::size_t>(num_samples), [&](std::size_t i) {
    LowRankSparseHermitian xp = (static_cast<long>(i) < forced)
                                    ? probes[i]
                                    : sample_X(n, k, subseed(seed, static_cast<std::uint64_t>(i)));
    ratios[i] = map_ratio(ensemble, xp);
    samples[i] = std::move(xp);
  });

  std::size_t lo = 0, hi = 0;
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    if (ratios[i] < ratios[lo]) lo = i;
    if (ratios[i] > ratios[hi]) hi = i;
  }

  RipEstimate est;
  est.lower_ratio = ratios[lo];
  est.upper_ratio = ratios[hi];
  est.num_samples = num_samples;
  est.worst_low = samples[lo];
  est.worst_high = samples[hi];
  est.n = n;
  est.m = ensemble.m();
  est.k = k;
  est.seed = seed;
  return est;
}

namespace {

nlohmann::json witness_summary(const LowRankSparseHermitian& xp) {
  return nlohmann::json{{"lambda1", xp.lambda1},
                        {"lambda2", xp.lambda2},
                        {"rank", xp.u2.has_value() && xp.lambda2 != 0.0 ? 2 : 1},
                        {"support", xp.support.indices()}};
}

}  // namespace

std::string to_json_record(const RipEstimate& est) {
  nlohmann::json record{
      {"n", est.n},
      {"m", est.m},
      {"k", est.k},
      {"seed", est.seed},
      {"num_samples", est.num_samples},
      {"lower_ratio", est.lower_ratio},
      {"upper_ratio", est.upper_ratio},
      {"witness_summaries",
       {{"low", witness_summary(est.worst_low)}, {"high", witness_summary(est.worst_high)}}},
      {"check_kind", "empirical-extremes-over-samples; necessary condition, not a certificate"},
  };
  return record.dump();
}

double lemma22_closed_form(double t) {
  if (t < -1.0 || t > 0.0) throw std::invalid_argument("lemma22_closed_form: t must be in [-1, 0]");
  return 2.0 * (1.0 + t * t) / (1.0 - t);
}

MonteCarloMean lemma22_monte_carlo(double t, long num_samples, std::uint64_t seed) {
  if (num_samples < 1000) throw std::invalid_argument("lemma22_monte_carlo: need >= 1000 samples");
  if (t < -1.0 || t > 0.0) throw std::invalid_argument("lemma22_monte_carlo: t must be in [-1, 0]");
  ChunkedMean cm = chunked_mean(num_samples, seed, [t](RandomStream& rs) {
    double z1 = rs.gaussian();
    double z2 = rs.gaussian();
    double z3 = rs.gaussian();
    double z4 = rs.gaussian();
    return std::abs(z1 * z1 + z2 * z2 + t * (z3 * z3 + z4 * z4));
  });
  return MonteCarloMean{cm.mean, cm.std_error, num_samples};
}

ExpectationCase ExpectationCase::from_t(double t) {
  ExpectationCase c;
  c.t = t;
  c.lambda1_abs = 1.0 / std::sqrt(1.0 + t * t);
  return c;
}

void ExpectationCase::validate() const {
  if (std::abs(t) > 1.0) throw std::invalid_argument("ExpectationCase: |t| must be <= 1");
  if (lambda1_abs < kSqrtHalf - 1e-12 || lambda1_abs > 1.0 + 1e-12) {
    throw std::invalid_argument("ExpectationCase: lambda1_abs must be in [sqrt(2)/2, 1]");
  }
  if (std::abs(lambda1_abs * lambda1_abs * (1.0 + t * t) - 1.0) > 1e-9) {
    throw std::invalid_argument("ExpectationCase: unit-norm constraint violated");
  }
}

XiEstimate xi_expectation_bounds(const ExpectationCase& c, long num_samples, std::uint64_t seed) {
  c.validate();
  double t = c.t;
  double lam = c.lambda1_abs;
  ChunkedMean cm = chunked_mean(num_samples, seed, [t, lam](RandomStream& rs) {
    // z_i ~ N(0, 1/2)
    double z1 = rs.gaussian() * kSqrtHalf;
    double z2 = rs.gaussian() * kSqrtHalf;
    double z3 = rs.gaussian() * kSqrtHalf;
    double z4 = rs.gaussian() * kSqrtHalf;
    return lam * std::abs(z1 * z1 + z2 * z2 + t * (z3 * z3 + z4 * z4));
  });
  XiEstimate est;
  est.mean = cm.mean;
  est.std_error = cm.std_error;
  est.in_bounds =
      cm.mean >= 0.57 - 3.0 * cm.std_error && cm.mean <= 2.0 + 3.0 * cm.std_error;
  return est;
}

}  // namespace cprlab
