#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace cprlab {

using Complex = std::complex<double>;

/// Dense complex vector. Immutable after construction; every entry is
/// verified finite and the length is at least 1.
class ComplexVector {
 public:
  explicit ComplexVector(Eigen::VectorXcd entries);
  ComplexVector(std::initializer_list<Complex> entries);

  static ComplexVector zeros(Eigen::Index n);
  static ComplexVector unit(Eigen::Index n, Eigen::Index i);

  Eigen::Index size() const { return entries_.size(); }
  Complex operator[](Eigen::Index i) const { return entries_(i); }
  const Eigen::VectorXcd& raw() const { return entries_; }

  double norm2() const { return entries_.norm(); }
  double norm1() const { return entries_.cwiseAbs().sum(); }
  double norm_inf() const { return entries_.size() ? entries_.cwiseAbs().maxCoeff() : 0.0; }
  /// Number of entries with nonzero modulus (exact test; thresholded
  /// vectors carry exact zeros).
  Eigen::Index l0() const;

 private:
  Eigen::VectorXcd entries_;
};

/// Strictly increasing set of indices in [0, n).
class SparseSupport {
 public:
  SparseSupport(std::vector<int> indices, int ambient_dim);

  /// Indices of exactly-nonzero entries of x.
  static SparseSupport of(const ComplexVector& x);

  int cardinality() const { return static_cast<int>(indices_.size()); }
  int ambient_dim() const { return ambient_dim_; }
  const std::vector<int>& indices() const { return indices_; }
  bool contains(int i) const;

 private:
  std::vector<int> indices_;
  int ambient_dim_;
};

/// Dense Hermitian matrix. Construction enforces conjugate symmetry:
/// inputs within `tol` of Hermitian are symmetrized by averaging with
/// their adjoint, anything further off is rejected.
class HermitianMatrix {
 public:
  static HermitianMatrix from_dense(const Eigen::MatrixXcd& x, double tol = 1e-10);
  static HermitianMatrix zero(Eigen::Index n);

  Eigen::Index dim() const { return entries_.rows(); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }
  const Eigen::MatrixXcd& raw() const { return entries_; }

  HermitianMatrix operator-(const HermitianMatrix& other) const;
  HermitianMatrix operator+(const HermitianMatrix& other) const;

 private:
  explicit HermitianMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {}
  Eigen::MatrixXcd entries_;
};

/// Count of rows holding at least one entry above the relative zero
/// tolerance 1e-12 * max-modulus (floored at 1e-300, so the zero matrix
/// counts 0 rows).
int row_sparsity(const HermitianMatrix& x);

double frobenius_norm(const HermitianMatrix& x);

/// The rank-one lift x -> x x*.
HermitianMatrix lift(const ComplexVector& x);

struct PhaseAlignment {
  ComplexVector aligned;  // c * x
  Complex phase;          // the optimal unit-modulus c
};

/// Rotates x by the unit-modulus phase minimizing ||c*x - ref||_2. When
/// <x, ref> = 0 every phase is optimal and c = 1 is returned.
PhaseAlignment phase_align(const ComplexVector& x, const ComplexVector& ref);

/// ||c*x - ref||_2 at the optimal phase c.
double aligned_distance(const ComplexVector& x, const ComplexVector& ref);

/// Frobenius distance of the lifts, || xx* - yy* ||_F. Invariant under a
/// global phase on either argument.
double dist_matrix(const ComplexVector& x, const ComplexVector& y);

}  // namespace cprlab
