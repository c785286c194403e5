#include "cprlab/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cprlab {

namespace {

double l1_norm(const Eigen::VectorXd& v) { return v.cwiseAbs().sum(); }

double linf_norm(const Eigen::VectorXd& v) {
  return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}

/// Indices of nonzero entries ordered by |v| descending, lowest index
/// breaking ties.
std::vector<int> order_by_magnitude(const Eigen::VectorXd& v) {
  std::vector<int> order;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) != 0.0) order.push_back(static_cast<int>(i));
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(v(a)) > std::abs(v(b));
  });
  return order;
}

}  // namespace

DecompositionCertificate decompose(const Eigen::VectorXd& v, int s, double theta) {
  if (s < 1) throw std::invalid_argument("decompose: s must be >= 1");
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw std::invalid_argument("decompose: theta must be positive and finite");
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v(i))) throw std::invalid_argument("decompose: non-finite entry in v");
  }
  double vinf = linf_norm(v);
  double v1 = l1_norm(v);
  if (vinf > theta * (1.0 + 1e-12)) {
    throw std::invalid_argument("decompose: hypothesis violated, ||v||_inf > theta");
  }
  double cap1 = static_cast<double>(s) * theta;
  if (v1 > cap1 * (1.0 + 1e-12)) {
    throw std::invalid_argument("decompose: hypothesis violated, ||v||_1 > s*theta");
  }

  DecompositionCertificate cert;
  cert.s = s;
  cert.theta = theta;
  cert.source = v;

  std::vector<int> order = order_by_magnitude(v);
  int nnz = static_cast<int>(order.size());
  if (nnz <= s) {
    cert.weights.push_back(1.0);
    cert.atoms.push_back(v);
    return cert;
  }

  // Head/tail split: keep the s-h largest entries verbatim in every atom
  // and choose the smallest h whose tail mass fits inside h*theta, so the
  // tail of each atom needs at most h coordinates.
  std::vector<double> suffix_mass(static_cast<std::size_t>(nnz) + 1, 0.0);
  for (int i = nnz - 1; i >= 0; --i) {
    suffix_mass[static_cast<std::size_t>(i)] =
        suffix_mass[static_cast<std::size_t>(i) + 1] + std::abs(v(order[static_cast<std::size_t>(i)]));
  }
  int h = s;
  for (int cand = 1; cand <= s; ++cand) {
    double tail = suffix_mass[static_cast<std::size_t>(s - cand)];
    if (tail <= static_cast<double>(cand) * theta) {
      h = cand;
      break;
    }
  }
  int head_count = s - h;
  std::vector<int> tail_idx(order.begin() + head_count, order.end());
  double tau = suffix_mass[static_cast<std::size_t>(head_count)];

  Eigen::VectorXd head = Eigen::VectorXd::Zero(v.size());
  for (int i = 0; i < head_count; ++i) head(order[static_cast<std::size_t>(i)]) = v(order[static_cast<std::size_t>(i)]);

  // Peel capped-simplex vertices off the tail. State: remaining weight w
  // and residual masses rho with sum(rho) = w * tau. Feasibility of the
  // remainder means rho_i <= theta * w for every coordinate.
  std::size_t tail_n = tail_idx.size();
  std::vector<double> rho(tail_n);
  for (std::size_t i = 0; i < tail_n; ++i) rho[i] = std::abs(v(tail_idx[i]));
  std::vector<double> original_mass = rho;
  double w = 1.0;

  const long atom_budget = 4 * static_cast<long>(v.size()) + 4;
  auto emit = [&](double weight, const std::vector<double>& fill) {
    Eigen::VectorXd atom = head;
    for (std::size_t i = 0; i < tail_n; ++i) {
      if (fill[i] > 0.0) {
        atom(tail_idx[i]) = (v(tail_idx[i]) > 0.0 ? fill[i] : -fill[i]);
      }
    }
    cert.weights.push_back(weight);
    cert.atoms.push_back(std::move(atom));
  };

  for (;;) {
    if (static_cast<long>(cert.atoms.size()) > atom_budget) {
      throw std::runtime_error("decompose: atom budget exceeded (internal error)");
    }
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < tail_n; ++i) {
      if (rho[i] > 0.0) active.push_back(i);
    }
    if (static_cast<int>(active.size()) <= h) {
      if (w <= 0.0) throw std::runtime_error("decompose: weight exhausted early (internal error)");
      std::vector<double> fill(tail_n, 0.0);
      double total = 0.0;
      for (std::size_t i : active) {
        fill[i] = std::min(rho[i] / w, theta);
        total += fill[i];
      }
      // Dividing the residual by a tiny final weight amplifies rounding
      // drift in the mass balance; rescaling to the target tail mass keeps
      // the atom's l1 at ||v||_1 while moving reconstruction by O(eps).
      if (total > tau && total > 0.0) {
        double scale = tau / total;
        for (std::size_t i : active) fill[i] *= scale;
      }
      emit(w, fill);
      break;
    }

    double cap = theta * w;
    // Coordinates pinned at the cap must appear in every remaining atom.
    std::vector<char> forced(tail_n, 0);
    int num_forced = 0;
    for (std::size_t i : active) {
      if (rho[i] >= cap * (1.0 - 1e-9)) {
        forced[i] = 1;
        ++num_forced;
      }
    }
    if (num_forced > h) {
      throw std::runtime_error("decompose: forced set exceeds capacity (internal error)");
    }

    std::vector<double> fill(tail_n, 0.0);
    for (std::size_t i : active) {
      if (forced[i]) fill[i] = theta;
    }
    double remaining = tau - static_cast<double>(num_forced) * theta;
    remaining = std::max(remaining, 0.0);
    // Fill non-forced actives by descending residual until the atom's
    // tail mass reaches tau.
    std::vector<std::size_t> candidates;
    for (std::size_t i : active) {
      if (!forced[i]) candidates.push_back(i);
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](std::size_t a, std::size_t b) { return rho[a] > rho[b]; });
    int slots = h - num_forced;
    for (std::size_t i : candidates) {
      if (remaining <= 0.0 || slots == 0) break;
      double val = std::min(theta, remaining);
      fill[i] = val;
      remaining -= val;
      --slots;
    }
    // A sub-tolerance remainder can survive when the hypothesis held only
    // within its 1e-12 slack; it stays in rho and is covered later.
    if (remaining > 1e-9 * std::max(theta, tau)) {
      throw std::runtime_error("decompose: tail fill fell short (internal error)");
    }

    // Largest weight keeping the residual feasible: no filled coordinate
    // overshoots zero, no unfilled coordinate outgrows the shrinking cap,
    // and the partially filled coordinate stays below it too.
    double lambda = w;
    for (std::size_t i : active) {
      if (fill[i] > 0.0) {
        lambda = std::min(lambda, rho[i] / fill[i]);
        if (fill[i] < theta * (1.0 - 1e-12)) {
          double slack = theta * w - rho[i];
          double denom = theta - fill[i];
          if (slack < lambda * denom) lambda = std::max(slack, 0.0) / denom;
        }
      } else {
        lambda = std::min(lambda, w - rho[i] / theta);
      }
    }
    if (!(lambda > 0.0)) {
      throw std::runtime_error("decompose: stalled peel step (internal error)");
    }
    lambda = std::min(lambda, w);

    emit(lambda, fill);
    w -= lambda;
    for (std::size_t i : active) {
      if (fill[i] > 0.0) {
        rho[i] -= lambda * fill[i];
        if (rho[i] <= original_mass[i] * 1e-12) rho[i] = 0.0;
      }
    }
    if (w <= 0.0) {
      bool mass_left = std::any_of(rho.begin(), rho.end(), [](double r) { return r > 0.0; });
      if (mass_left) {
        throw std::runtime_error("decompose: weight exhausted with residual mass (internal error)");
      }
      break;
    }
  }

  return cert;
}

CertificateCheck verify_certificate(const DecompositionCertificate& cert) {
  CertificateCheck check;
  auto fail = [&](const std::string& why) {
    check.ok = false;
    check.violation = why;
    return check;
  };

  if (cert.weights.size() != cert.atoms.size()) {
    return fail("weights and atoms differ in count");
  }
  if (cert.weights.empty()) return fail("empty certificate");

  for (double w : cert.weights) {
    if (!(w >= -1e-12 && w <= 1.0 + 1e-12)) return fail("weight out of [0,1]");
  }
  double sum = std::accumulate(cert.weights.begin(), cert.weights.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-10) return fail("weights do not sum to 1");

  double v1 = l1_norm(cert.source);
  double vinf = linf_norm(cert.source);
  for (const auto& atom : cert.atoms) {
    if (atom.size() != cert.source.size()) return fail("atom dimension mismatch");
    int nnz = 0;
    for (Eigen::Index i = 0; i < atom.size(); ++i) {
      if (atom(i) != 0.0) {
        ++nnz;
        if (cert.source(i) == 0.0) return fail("atom support outside source support");
      }
    }
    if (nnz > cert.s) return fail("atom sparsity exceeds s");
    if (l1_norm(atom) > v1 + 1e-10) return fail("atom l1 exceeds source l1");
    if (linf_norm(atom) > cert.theta + 1e-10) return fail("atom linf exceeds theta");
  }

  Eigen::VectorXd recon = Eigen::VectorXd::Zero(cert.source.size());
  for (std::size_t i = 0; i < cert.atoms.size(); ++i) {
    recon += cert.weights[i] * cert.atoms[i];
  }
  double err = linf_norm(recon - cert.source);
  if (err > 1e-9 * std::max(1.0, vinf)) return fail("reconstruction mismatch");

  return check;
}

}  // namespace cprlab
