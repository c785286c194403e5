#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <string>

#include "cprlab/core.hpp"

namespace cprlab {

enum class NoiseKind { none, gaussian_rescaled, adversarial_sphere };

std::string to_string(NoiseKind kind);
NoiseKind noise_kind_from_string(const std::string& name);

/// m complex gaussian measurement vectors a_j of length n, regenerable
/// bit-for-bit from (n, m, seed). Entries have Re, Im ~ N(0, 1/2) i.i.d.,
/// so E|a_ji|^2 = 1. Vector j is drawn from the sub-stream subseed(seed, j)
/// and is therefore independent of worker scheduling.
class MeasurementEnsemble {
 public:
  static MeasurementEnsemble sample(int n, int m, std::uint64_t seed);

  /// Builds an ensemble from explicit vectors (one per row); used to
  /// inject deterministic test ensembles.
  static MeasurementEnsemble from_vectors(const Eigen::MatrixXcd& rows_are_aj,
                                          std::uint64_t seed = 0);

  int n() const { return static_cast<int>(astar_.cols()); }
  int m() const { return static_cast<int>(astar_.rows()); }
  std::uint64_t seed() const { return seed_; }
  const std::string& generator_id() const { return generator_id_; }

  /// Measurement vector a_j.
  ComplexVector vector(int j) const;

  /// Row j holds a_j^* (entry-wise conjugate of a_j); z = astar() * x
  /// yields z_j = <a_j, x>.
  const Eigen::MatrixXcd& astar() const { return astar_; }

  /// Binary snapshot: header (n, m, seed, generator-id) followed by the
  /// a_j entries as row-major interleaved re/im doubles. Round-trips
  /// bit-exactly.
  void save(const std::filesystem::path& path) const;
  static MeasurementEnsemble load(const std::filesystem::path& path);

 private:
  MeasurementEnsemble(Eigen::MatrixXcd astar, std::uint64_t seed, std::string generator_id)
      : astar_(std::move(astar)), seed_(seed), generator_id_(std::move(generator_id)) {}

  Eigen::MatrixXcd astar_;  // m x n, row j = a_j^*
  std::uint64_t seed_;
  std::string generator_id_;
};

/// (a_1^* X a_1, ..., a_m^* X a_m). The imaginary residue of each quadratic
/// form is asserted to be <= 1e-10 * (1 + |real part|) and discarded; a
/// larger residue signals a non-Hermitian input sneaking through and throws.
Eigen::VectorXd apply_map_matrix(const MeasurementEnsemble& ensemble, const HermitianMatrix& x);

/// (|<a_1, x>|^2, ..., |<a_m, x>|^2); equals apply_map_matrix on lift(x).
Eigen::VectorXd apply_map_signal(const MeasurementEnsemble& ensemble, const ComplexVector& x);

struct NoisyMeasurements {
  Eigen::VectorXd y;
  double epsilon = 0.0;
  NoiseKind kind = NoiseKind::none;
};

/// y = clean + w with ||w||_2 <= epsilon exactly. gaussian_rescaled draws a
/// standard gaussian direction and rescales it to length epsilon;
/// adversarial_sphere pushes along the clean vector itself; none is w = 0.
NoisyMeasurements add_noise(const Eigen::VectorXd& clean, double epsilon, NoiseKind kind,
                            std::uint64_t seed);

}  // namespace cprlab
