// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "opmod/module_space.hpp"

namespace opmod {

struct OpFlags {
  bool normal = false;
  bool selfadjoint = false;
  bool positive = false;
  bool strictly_positive = false;
  bool bounded = false;
};

/// A regular operator held by its z-transform: an adjointable contraction z
/// with (1 - z*z)^{1/2} of dense range. At finite rank dense range forces
/// (1 - z*z) invertible, so every value here has a bounded representative;
/// genuine unboundedness is the symbolic model's business. The operator
/// itself is never stored, only derived on demand.
class RegularOp {
 public:
  /// Validates ||z|| <= 1 + 1e-12 and the eigenvalue floor of 1 - z*z;
  /// raises UnboundedOperator when the defect degenerates.
  static RegularOp from_z(AdjointableOp z);

  /// z = T (1 + T*T)^{-1/2}. Total: every adjointable operator is regular.
  static RegularOp from_bounded(const AdjointableOp& t);

  const AdjointableOp& z() const { return z_; }
  /// Cached (1 - z*z)^{1/2}.
  const AdjointableOp& defect() const { return defect_; }
  const OpFlags& flags() const { return flags_; }
  const ModuleDescriptor& domain() const { return z_.domain(); }
  const ModuleDescriptor& codomain() const { return z_.codomain(); }
  bool endo() const { return z_.endo(); }

  /// T = z (1 - z*z)^{-1/2}; raises UnboundedOperator at the floor.
  AdjointableOp bounded() const;

  /// z_{T*} = (z_T)*; involutive.
  RegularOp adjoint() const;

 private:
  RegularOp(AdjointableOp z, AdjointableOp defect, OpFlags flags)
      : z_(std::move(z)), defect_(std::move(defect)), flags_(flags) {}

  AdjointableOp z_, defect_;
  OpFlags flags_;
};

/// Classification through the z-transform: each property of T is read off
/// the same property of z.
OpFlags classify(const RegularOp& r, double tol = kDefaultTol);

/// The positive regular operator T*T, satisfying (1+T*T)^{-1} = 1 - z*z.
RegularOp t_star_t(const RegularOp& r);

/// |T| = (T*T)^{1/2}.
RegularOp absolute_value(const RegularOp& r);

// Multiplier closures. At bounded finite rank the domain hypotheses hold
// automatically and the closures are plain compositions.
AdjointableOp right_multiply(const RegularOp& t, const AdjointableOp& x);
AdjointableOp left_multiply(const AdjointableOp& x, const RegularOp& t);
AdjointableOp middle_multiply(const RegularOp& s, const AdjointableOp& x, const RegularOp& t);

/// Finite-rank test: z has full rank. rel_tol is the relative singular
/// value cutoff.
bool is_invertible(const RegularOp& r, double rel_tol = kRankRelTol);
RegularOp invert(const RegularOp& r);

/// Invertible with bounded inverse. At finite rank this coincides with
/// is_invertible; the two notions separate only in the unbounded model.
bool is_adjointable_invertible(const RegularOp& r, double rel_tol = kRankRelTol);

/// The regular operator on E_omega whose z-transform is (z_T)_omega,
/// returned through that z matrix. Zero-dimensional spaces give the empty
/// matrix.
Eigen::MatrixXcd localize_op(const LocalizedSpace& s, const RegularOp& r);

}  // namespace opmod
