// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "opmod/errors.hpp"
#include "opmod/scalar_function.hpp"

namespace opmod {

/// Library-wide default tolerance. Every operation that needs one takes it
/// as an explicit parameter defaulting to this.
inline constexpr double kDefaultTol = 1e-9;

/// Eigenvalues closer than this (absolute) are merged into one spectral
/// point; keeps projections stable against rounding.
inline constexpr double kEigenvalueMergeTol = 1e-8;

/// Eigenvalues of (1 +- z*z) below this floor raise UnboundedOperator
/// instead of silently blowing up in an inverse square root.
inline constexpr double kEigFloor = 1e-13;

/// Singular values below kRankRelTol * sigma_max count as zero in rank
/// decisions.
inline constexpr double kRankRelTol = 1e-10;

/// A finite-dimensional C*-algebra: a direct sum of full complex matrix
/// algebras, block k of size block_dims[k].
class AlgebraDescriptor {
 public:
  AlgebraDescriptor() : block_dims_{1} {}
  explicit AlgebraDescriptor(std::vector<int> block_dims);

  static AlgebraDescriptor scalar() { return AlgebraDescriptor({1}); }
  static AlgebraDescriptor matrix(int n) { return AlgebraDescriptor({n}); }
  static AlgebraDescriptor commutative(int n) { return AlgebraDescriptor(std::vector<int>(n, 1)); }

  const std::vector<int>& block_dims() const { return block_dims_; }
  int blocks() const { return static_cast<int>(block_dims_.size()); }
  int dim(int k) const { return block_dims_[k]; }
  bool commutative() const { return commutative_; }
  int total_dim() const;

  bool operator==(const AlgebraDescriptor& o) const { return block_dims_ == o.block_dims_; }
  bool operator!=(const AlgebraDescriptor& o) const { return !(*this == o); }

 private:
  std::vector<int> block_dims_;
  bool commutative_ = true;
};

/// An element of a finite-dimensional C*-algebra, stored blockwise.
/// Immutable after construction; all operations return fresh values.
class AlgebraElement {
 public:
  AlgebraElement(AlgebraDescriptor desc, std::vector<Eigen::MatrixXcd> blocks);

  static AlgebraElement zero(const AlgebraDescriptor& d);
  static AlgebraElement identity(const AlgebraDescriptor& d);
  static AlgebraElement scalar(const AlgebraDescriptor& d, std::complex<double> c);
  /// Diagonal element of a commutative algebra.
  static AlgebraElement diagonal(const AlgebraDescriptor& d,
                                 const std::vector<std::complex<double>>& values);

  const AlgebraDescriptor& descriptor() const { return desc_; }
  const Eigen::MatrixXcd& block(int k) const { return blocks_[k]; }
  const std::vector<Eigen::MatrixXcd>& blocks() const { return blocks_; }

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(const AlgebraElement& o) const;
  AlgebraElement operator*(std::complex<double> c) const;
  AlgebraElement operator-() const { return *this * std::complex<double>(-1.0); }

  bool is_zero(double tol = kDefaultTol) const;

 private:
  AlgebraDescriptor desc_;
  std::vector<Eigen::MatrixXcd> blocks_;
};

/// Blockwise conjugate transpose.
AlgebraElement star(const AlgebraElement& a);

/// C*-norm: max over blocks of the largest singular value.
double norm(const AlgebraElement& a);

/// Selfadjoint within tol with all eigenvalues >= -tol.
bool is_positive(const AlgebraElement& a, double tol = kDefaultTol);

/// Spectral decomposition of a normal element: eigenvalues merged at
/// kEigenvalueMergeTol, with mutually orthogonal selfadjoint projections
/// summing to the identity.
struct NormalEigensystem {
  std::vector<std::complex<double>> eigenvalues;
  std::vector<AlgebraElement> projections;
};

NormalEigensystem normal_eigensystem(const AlgebraElement& a, double tol = kDefaultTol);

/// f applied eigenvalue-wise through the eigensystem.
AlgebraElement apply_scalar_function(const AlgebraElement& a, const ScalarFunction& f,
                                     double tol = kDefaultTol);

/// Finite increasing net of positive contractions converging to 1 in norm.
/// Every algebra here is unital, so this is the one-element list [1]; the
/// genuinely increasing truncation nets live in the unbounded model.
std::vector<AlgebraElement> approximate_unit(const AlgebraDescriptor& d);

// Block-level numerical kernels shared by the module and operator layers.
// These operate on plain lists of square complex matrices.
namespace blk {

using MatList = std::vector<Eigen::MatrixXcd>;

double opnorm(const MatList& m);
double opnorm(const Eigen::MatrixXcd& m);
MatList adjoint(const MatList& m);
MatList mul(const MatList& a, const MatList& b);
MatList add(const MatList& a, const MatList& b);
MatList sub(const MatList& a, const MatList& b);
MatList scale(const MatList& a, std::complex<double> c);
bool is_hermitian(const MatList& m, double tol);
bool is_normal(const MatList& m, double tol);

/// f applied to a Hermitian list through a selfadjoint eigensolve.
/// Raises UnboundedOperator when require_floor is set and an eigenvalue
/// falls below kEigFloor (used for inverse square roots).
MatList hermitian_apply(const MatList& m, const std::function<std::complex<double>(double)>& f,
                        bool require_floor = false);

/// Unitary diagonalization of one normal matrix via the commuting pair
/// (m+m*)/2, (m-m*)/2i; column i of u pairs with lam(i).
void diagonalize_normal(const Eigen::MatrixXcd& m, double merge_tol, Eigen::MatrixXcd& u,
                        Eigen::VectorXcd& lam);

/// Joint spectral decomposition of a normal list. Hermitian inputs go
/// through one selfadjoint solve; general normal inputs diagonalize the
/// commuting pair (m+m*)/2, (m-m*)/2i on joint eigenspaces.
struct Eigensystem {
  std::vector<std::complex<double>> eigenvalues;
  // projections[i][k]: block k of the projection onto eigenvalue i.
  std::vector<MatList> projections;
};

Eigensystem eigensystem(const MatList& m, double tol = kDefaultTol,
                        double merge_tol = kEigenvalueMergeTol);

/// Reassemble sum f(lambda_i) P_i.
MatList eig_apply(const Eigensystem& es,
                  const std::function<std::complex<double>(std::complex<double>)>& f);

/// Numerical rank with the kRankRelTol cutoff; full_rank means invertible.
bool full_rank(const MatList& m);

}  // namespace blk

}  // namespace opmod
