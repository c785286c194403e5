#include "cprlab/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cprlab {

namespace {

void require_same_dim(const ComplexVector& x, const ComplexVector& y, const char* op) {
  if (x.size() != y.size()) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch");
  }
}

Complex inner(const ComplexVector& x, const ComplexVector& y) {
  // Conjugate-linear in the first argument: <x, y> = x* y.
  return x.raw().dot(y.raw());
}

}  // namespace

ComplexVector::ComplexVector(Eigen::VectorXcd entries) : entries_(std::move(entries)) {
  if (entries_.size() < 1) throw std::invalid_argument("ComplexVector: length must be >= 1");
  for (Eigen::Index i = 0; i < entries_.size(); ++i) {
    if (!std::isfinite(entries_(i).real()) || !std::isfinite(entries_(i).imag())) {
      throw std::invalid_argument("ComplexVector: non-finite entry");
    }
  }
}

ComplexVector::ComplexVector(std::initializer_list<Complex> entries)
    : ComplexVector(Eigen::Map<const Eigen::VectorXcd>(entries.begin(),
                                                       static_cast<Eigen::Index>(entries.size()))) {}

ComplexVector ComplexVector::zeros(Eigen::Index n) {
  return ComplexVector(Eigen::VectorXcd::Zero(n));
}

ComplexVector ComplexVector::unit(Eigen::Index n, Eigen::Index i) {
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
  e(i) = Complex(1.0, 0.0);
  return ComplexVector(std::move(e));
}

Eigen::Index ComplexVector::l0() const {
  Eigen::Index count = 0;
  for (Eigen::Index i = 0; i < entries_.size(); ++i) {
    if (std::abs(entries_(i)) > 0.0) ++count;
  }
  return count;
}

SparseSupport::SparseSupport(std::vector<int> indices, int ambient_dim)
    : indices_(std::move(indices)), ambient_dim_(ambient_dim) {
  std::sort(indices_.begin(), indices_.end());
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < 0 || indices_[i] >= ambient_dim_) {
      throw std::invalid_argument("SparseSupport: index out of range");
    }
    if (i > 0 && indices_[i] == indices_[i - 1]) {
      throw std::invalid_argument("SparseSupport: duplicate index");
    }
  }
}

SparseSupport SparseSupport::of(const ComplexVector& x) {
  std::vector<int> idx;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > 0.0) idx.push_back(static_cast<int>(i));
  }
  return SparseSupport(std::move(idx), static_cast<int>(x.size()));
}

bool SparseSupport::contains(int i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

HermitianMatrix HermitianMatrix::from_dense(const Eigen::MatrixXcd& x, double tol) {
  if (x.rows() != x.cols()) throw std::invalid_argument("HermitianMatrix: must be square");
  double deviation = (x - x.adjoint()).cwiseAbs().maxCoeff();
  if (deviation > tol) {
    throw std::invalid_argument("HermitianMatrix: input deviates from conjugate symmetry");
  }
  Eigen::MatrixXcd sym = 0.5 * (x + x.adjoint());
  sym.diagonal() = sym.diagonal().real().cast<Complex>();
  return HermitianMatrix(std::move(sym));
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index n) {
  return HermitianMatrix(Eigen::MatrixXcd::Zero(n, n));
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("HermitianMatrix: dimension mismatch");
  return HermitianMatrix(entries_ - other.entries_);
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("HermitianMatrix: dimension mismatch");
  return HermitianMatrix(entries_ + other.entries_);
}

int row_sparsity(const HermitianMatrix& x) {
  double largest = x.raw().cwiseAbs().maxCoeff();
  double threshold = 1e-12 * std::max(largest, 1e-300);
  int rows = 0;
  for (Eigen::Index i = 0; i < x.dim(); ++i) {
    if (x.raw().row(i).cwiseAbs().maxCoeff() > threshold) ++rows;
  }
  return rows;
}

double frobenius_norm(const HermitianMatrix& x) { return x.raw().norm(); }

HermitianMatrix lift(const ComplexVector& x) {
  Eigen::MatrixXcd outer = x.raw() * x.raw().adjoint();
  return HermitianMatrix::from_dense(outer, 1e-9);
}

PhaseAlignment phase_align(const ComplexVector& x, const ComplexVector& ref) {
  require_same_dim(x, ref, "phase_align");
  Complex s = inner(x, ref);
  Complex c = (std::abs(s) > 0.0) ? s / std::abs(s) : Complex(1.0, 0.0);
  return PhaseAlignment{ComplexVector(c * x.raw()), c};
}

double aligned_distance(const ComplexVector& x, const ComplexVector& ref) {
  PhaseAlignment pa = phase_align(x, ref);
  return (pa.aligned.raw() - ref.raw()).norm();
}

double dist_matrix(const ComplexVector& x, const ComplexVector& y) {
  require_same_dim(x, y, "dist_matrix");
  // Entrywise difference of the lifts. The closed form ||x||^4 + ||y||^4
  // - 2|<x,y>|^2 cancels catastrophically near zero distance; this route
  // stays accurate there.
  return (x.raw() * x.raw().adjoint() - y.raw() * y.raw().adjoint()).norm();
}

}  // namespace cprlab
