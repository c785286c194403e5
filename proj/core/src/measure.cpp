#include "cprlab/measure.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "cprlab/parallel.hpp"
#include "cprlab/rng.hpp"

namespace cprlab {

namespace {

constexpr char kMagic[8] = {'C', 'P', 'R', 'E', 'N', 'S', '1', '\0'};
constexpr std::uint32_t kFormatVersion = 1;
constexpr const char* kGeneratorId = "splitmix64-boxmuller-v1";

void write_bytes(std::ofstream& out, const void* data, std::size_t size) {
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
}

void read_bytes(std::ifstream& in, void* data, std::size_t size) {
  in.read(static_cast<char*>(data), static_cast<std::streamsize>(size));
  if (!in) throw std::runtime_error("ensemble file: truncated");
}

}  // namespace

std::string to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::none: return "none";
    case NoiseKind::gaussian_rescaled: return "gaussian_rescaled";
    case NoiseKind::adversarial_sphere: return "adversarial_sphere";
  }
  throw std::logic_error("unknown NoiseKind");
}

NoiseKind noise_kind_from_string(const std::string& name) {
  if (name == "none") return NoiseKind::none;
  if (name == "gaussian_rescaled") return NoiseKind::gaussian_rescaled;
  if (name == "adversarial_sphere") return NoiseKind::adversarial_sphere;
  throw std::invalid_argument("unknown noise kind: " + name);
}

MeasurementEnsemble MeasurementEnsemble::sample(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw std::invalid_argument("MeasurementEnsemble: need n >= 1, m >= 1");
  Eigen::MatrixXcd astar(m, n);
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t j) {
    RandomStream rs(subseed(seed, static_cast<std::uint64_t>(j)));
    for (int i = 0; i < n; ++i) {
      Complex a_ji = rs.complex_gaussian();
      astar(static_cast<Eigen::Index>(j), i) = std::conj(a_ji);
    }
  });
  return MeasurementEnsemble(std::move(astar), seed, kGeneratorId);
}

MeasurementEnsemble MeasurementEnsemble::from_vectors(const Eigen::MatrixXcd& rows_are_aj,
                                                      std::uint64_t seed) {
  if (rows_are_aj.rows() < 1 || rows_are_aj.cols() < 1) {
    throw std::invalid_argument("MeasurementEnsemble: need n >= 1, m >= 1");
  }
  return MeasurementEnsemble(rows_are_aj.conjugate(), seed, "injected");
}

ComplexVector MeasurementEnsemble::vector(int j) const {
  if (j < 0 || j >= m()) throw std::out_of_range("MeasurementEnsemble::vector");
  return ComplexVector(astar_.row(j).conjugate().transpose());
}

void MeasurementEnsemble::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  write_bytes(out, kMagic, sizeof(kMagic));
  write_bytes(out, &kFormatVersion, sizeof(kFormatVersion));
  std::uint32_t id_len = static_cast<std::uint32_t>(generator_id_.size());
  write_bytes(out, &id_len, sizeof(id_len));
  write_bytes(out, generator_id_.data(), id_len);
  std::uint64_t n64 = static_cast<std::uint64_t>(n());
  std::uint64_t m64 = static_cast<std::uint64_t>(m());
  write_bytes(out, &n64, sizeof(n64));
  write_bytes(out, &m64, sizeof(m64));
  write_bytes(out, &seed_, sizeof(seed_));
  // Row-major a_j entries, re/im interleaved.
  std::vector<double> buffer(static_cast<std::size_t>(2) * static_cast<std::size_t>(n()));
  for (int j = 0; j < m(); ++j) {
    for (int i = 0; i < n(); ++i) {
      Complex a_ji = std::conj(astar_(j, i));
      buffer[2 * static_cast<std::size_t>(i)] = a_ji.real();
      buffer[2 * static_cast<std::size_t>(i) + 1] = a_ji.imag();
    }
    write_bytes(out, buffer.data(), buffer.size() * sizeof(double));
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

MeasurementEnsemble MeasurementEnsemble::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  char magic[8];
  read_bytes(in, magic, sizeof(magic));
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("ensemble file: bad magic");
  }
  std::uint32_t version = 0;
  read_bytes(in, &version, sizeof(version));
  if (version != kFormatVersion) throw std::runtime_error("ensemble file: unknown version");
  std::uint32_t id_len = 0;
  read_bytes(in, &id_len, sizeof(id_len));
  if (id_len > 256) throw std::runtime_error("ensemble file: generator id too long");
  std::string generator_id(id_len, '\0');
  if (id_len > 0) read_bytes(in, generator_id.data(), id_len);
  std::uint64_t n64 = 0, m64 = 0, seed = 0;
  read_bytes(in, &n64, sizeof(n64));
  read_bytes(in, &m64, sizeof(m64));
  read_bytes(in, &seed, sizeof(seed));
  if (n64 < 1 || m64 < 1 || n64 > (1u << 20) || m64 > (1u << 26)) {
    throw std::runtime_error("ensemble file: implausible dimensions");
  }
  int n = static_cast<int>(n64);
  int m = static_cast<int>(m64);
  Eigen::MatrixXcd astar(m, n);
  std::vector<double> buffer(static_cast<std::size_t>(2) * static_cast<std::size_t>(n));
  for (int j = 0; j < m; ++j) {
    read_bytes(in, buffer.data(), buffer.size() * sizeof(double));
    for (int i = 0; i < n; ++i) {
      Complex a_ji(buffer[2 * static_cast<std::size_t>(i)],
                   buffer[2 * static_cast<std::size_t>(i) + 1]);
      astar(j, i) = std::conj(a_ji);
    }
  }
  return MeasurementEnsemble(std::move(astar), seed, std::move(generator_id));
}

Eigen::VectorXd apply_map_matrix(const MeasurementEnsemble& ensemble, const HermitianMatrix& x) {
  if (x.dim() != ensemble.n()) throw std::invalid_argument("apply_map_matrix: dimension mismatch");
  const Eigen::MatrixXcd& astar = ensemble.astar();
  Eigen::VectorXd out(ensemble.m());
  for (int j = 0; j < ensemble.m(); ++j) {
    Eigen::VectorXcd aj = astar.row(j).adjoint();
    Complex q = (astar.row(j) * (x.raw() * aj))(0, 0);
    if (std::abs(q.imag()) > 1e-10 * (1.0 + std::abs(q.real()))) {
      throw std::runtime_error("apply_map_matrix: quadratic form has non-negligible imaginary part");
    }
    out(j) = q.real();
  }
  return out;
}

Eigen::VectorXd apply_map_signal(const MeasurementEnsemble& ensemble, const ComplexVector& x) {
  if (x.size() != ensemble.n()) throw std::invalid_argument("apply_map_signal: dimension mismatch");
  Eigen::VectorXcd z = ensemble.astar() * x.raw();
  return z.cwiseAbs2();
}

NoisyMeasurements add_noise(const Eigen::VectorXd& clean, double epsilon, NoiseKind kind,
                            std::uint64_t seed) {
  if (epsilon < 0.0) throw std::invalid_argument("add_noise: epsilon must be >= 0");
  NoisyMeasurements result;
  result.epsilon = epsilon;
  result.kind = kind;
  if (epsilon == 0.0 || kind == NoiseKind::none) {
    result.y = clean;
    return result;
  }
  Eigen::VectorXd w(clean.size());
  switch (kind) {
    case NoiseKind::gaussian_rescaled: {
      RandomStream rs(seed);
      for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = rs.gaussian();
      double norm = w.norm();
      if (norm == 0.0) {
        w.setZero();
        w(0) = epsilon;
      } else {
        w *= epsilon / norm;
      }
      break;
    }
    case NoiseKind::adversarial_sphere: {
      double norm = clean.norm();
      if (norm == 0.0) {
        w.setZero();
        w(0) = epsilon;
      } else {
        w = clean * (epsilon / norm);
      }
      break;
    }
    case NoiseKind::none:
      w.setZero();
      break;
  }
  result.y = clean + w;
  return result;
}

}  // namespace cprlab
