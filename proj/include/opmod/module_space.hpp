// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include "opmod/algebra.hpp"

namespace opmod {

/// The free Hilbert C*-module E = A^p with the inner product
/// <v,w> = sum_i w_i* v_i (linear in the first slot).
class ModuleDescriptor {
 public:
  ModuleDescriptor() : rank_(1) {}
  ModuleDescriptor(AlgebraDescriptor algebra, int rank);

  const AlgebraDescriptor& algebra() const { return algebra_; }
  int rank() const { return rank_; }

  bool operator==(const ModuleDescriptor& o) const {
    return rank_ == o.rank_ && algebra_ == o.algebra_;
  }
  bool operator!=(const ModuleDescriptor& o) const { return !(*this == o); }

 private:
  AlgebraDescriptor algebra_;
  int rank_;
};

/// Element of A^p. Block k is the (p*d_k) x d_k complex matrix obtained by
/// stacking the p coordinate blocks vertically; the right A-action and the
/// inner product are then plain matrix algebra per block.
class ModuleVector {
 public:
  ModuleVector(ModuleDescriptor desc, std::vector<Eigen::MatrixXcd> blocks);

  static ModuleVector zero(const ModuleDescriptor& d);
  /// Coordinate i holding the identity of A.
  static ModuleVector basis(const ModuleDescriptor& d, int i);
  static ModuleVector from_coords(const ModuleDescriptor& d,
                                  const std::vector<AlgebraElement>& coords);

  const ModuleDescriptor& descriptor() const { return desc_; }
  const std::vector<Eigen::MatrixXcd>& blocks() const { return blocks_; }
  AlgebraElement coord(int i) const;

  ModuleVector operator+(const ModuleVector& o) const;
  ModuleVector operator-(const ModuleVector& o) const;
  ModuleVector operator*(std::complex<double> c) const;
  /// Right module action v . a.
  ModuleVector acted_by(const AlgebraElement& a) const;

  /// ||<v,v>||^{1/2}.
  double norm() const;

 private:
  ModuleDescriptor desc_;
  std::vector<Eigen::MatrixXcd> blocks_;
};

AlgebraElement inner_product(const ModuleVector& v, const ModuleVector& w);

/// A-linear adjointable map A^p -> A^q, stored per block as the flattened
/// (q*d_k) x (p*d_k) complex matrix. The flattening M_q,p(M_d) = M_(qd),(pd)
/// is a *-isomorphism, so norms, adjoints and spectra are read off directly.
class AdjointableOp {
 public:
  AdjointableOp(ModuleDescriptor domain, ModuleDescriptor codomain,
                std::vector<Eigen::MatrixXcd> blocks);

  static AdjointableOp zero(const ModuleDescriptor& dom, const ModuleDescriptor& cod);
  static AdjointableOp identity(const ModuleDescriptor& d);
  static AdjointableOp scalar(const ModuleDescriptor& d, std::complex<double> c);
  /// Operator over A = C acting on C^rows from C^cols.
  static AdjointableOp from_complex_matrix(const Eigen::MatrixXcd& m);
  static AdjointableOp from_entries(const ModuleDescriptor& dom, const ModuleDescriptor& cod,
                                    const std::vector<std::vector<AlgebraElement>>& entries);

  const ModuleDescriptor& domain() const { return domain_; }
  const ModuleDescriptor& codomain() const { return codomain_; }
  bool endo() const { return domain_ == codomain_; }
  const std::vector<Eigen::MatrixXcd>& blocks() const { return blocks_; }
  AlgebraElement entry(int i, int j) const;

  ModuleVector apply(const ModuleVector& v) const;
  AdjointableOp adjoint() const;
  AdjointableOp operator*(const AdjointableOp& o) const;  // composition
  AdjointableOp operator+(const AdjointableOp& o) const;
  AdjointableOp operator-(const AdjointableOp& o) const;
  AdjointableOp operator*(std::complex<double> c) const;

  double norm() const { return blk::opnorm(blocks_); }

 private:
  ModuleDescriptor domain_, codomain_;
  std::vector<Eigen::MatrixXcd> blocks_;
};

/// Rank-one operator u -> v <u,w>; theta(v,w)* = theta(w,v).
AdjointableOp theta(const ModuleVector& v, const ModuleVector& w);

AdjointableOp op_adjoint(const AdjointableOp& x);

/// Spectral decomposition of a normal endomorphism.
struct OpEigensystem {
  std::vector<std::complex<double>> eigenvalues;
  std::vector<AdjointableOp> projections;
};
OpEigensystem op_eigensystem(const AdjointableOp& x, double tol = kDefaultTol);

/// E as a complex vector space: block k contributes p*d_k^2 coordinates,
/// column-major within the block.
Eigen::VectorXcd flatten(const ModuleVector& v);
int flat_dim(const ModuleDescriptor& d);
/// The complex-linear action of x on flattened coordinates.
Eigen::MatrixXcd flatten_op(const AdjointableOp& x);

/// Hilbert space E_omega induced by the positive functional
/// omega(a) = sum_k tr(rho_k a_k), null directions cut at
/// 1e-12 * (largest Gram eigenvalue). Zero-dimensional results are legal.
class LocalizedSpace {
 public:
  LocalizedSpace(ModuleDescriptor module, int dimension, Eigen::MatrixXcd gram_root,
                 Eigen::MatrixXcd gram_root_pinv)
      : module_(std::move(module)),
        dimension_(dimension),
        gram_root_(std::move(gram_root)),
        pinv_(std::move(gram_root_pinv)) {}

  const ModuleDescriptor& module() const { return module_; }
  int dimension() const { return dimension_; }
  /// m x D map from flattened coordinates to the localized space.
  const Eigen::MatrixXcd& gram_root() const { return gram_root_; }
  const Eigen::MatrixXcd& gram_root_pinv() const { return pinv_; }

 private:
  ModuleDescriptor module_;
  int dimension_;
  Eigen::MatrixXcd gram_root_, pinv_;
};

LocalizedSpace localize(const ModuleDescriptor& d, const AlgebraElement& rho,
                        double tol = kDefaultTol);

Eigen::VectorXcd localize_vector(const LocalizedSpace& s, const ModuleVector& v);

/// T_omega with T_omega(v bar) = (T v) bar; contraction of norms.
Eigen::MatrixXcd localize_op(const LocalizedSpace& s, const AdjointableOp& x);

}  // namespace opmod
