#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace cprlab {

/// Advances a splitmix64 state and returns the next output word.
std::uint64_t splitmix64_next(std::uint64_t& state);

/// Derives the seed for sub-stream `index` of a computation seeded with
/// `seed`. Streams for distinct indices are independent, so work items can
/// be farmed out to any number of workers without changing results.
std::uint64_t subseed(std::uint64_t seed, std::uint64_t index);

/// Deterministic random stream: splitmix64 words, uniforms in [0,1), and
/// Box-Muller gaussians. Output is reproducible bit-for-bit for a given
/// seed on any platform with IEEE-754 doubles.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64_next(state_); }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform01();

  /// Uniform in (0, 1]; safe as a log() argument.
  double uniform_open01();

  /// Standard normal via Box-Muller; the paired sample is cached.
  double gaussian();

  double gaussian(double stddev) { return stddev * gaussian(); }

  /// Complex gaussian with Re and Im each N(0, 1/2), so E|z|^2 = 1.
  std::complex<double> complex_gaussian();

  /// Uniform integer in [0, bound); rejection-sampled, bound >= 1.
  std::uint64_t uniform_index(std::uint64_t bound);

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Sorted k-subset of {0, ..., n-1}, uniform over subsets.
std::vector<int> sample_support(int n, int k, RandomStream& rs);

}  // namespace cprlab
