// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "opmod/regular.hpp"

#include <cmath>

namespace opmod {

namespace {

OpFlags compute_flags(const AdjointableOp& z, double tol) {
  OpFlags f;
  if (z.endo()) {
    const auto zs = z.adjoint();
    f.normal = blk::opnorm(blk::sub(blk::mul(z.blocks(), zs.blocks()),
                                    blk::mul(zs.blocks(), z.blocks()))) <= tol;
    f.selfadjoint = blk::opnorm(blk::sub(z.blocks(), zs.blocks())) <= tol;
    if (f.selfadjoint) {
      bool pos = true;
      for (const auto& b : z.blocks()) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            Eigen::MatrixXcd(0.5 * (b + b.adjoint())));
        if (es.eigenvalues().size() > 0 && es.eigenvalues()(0) < -tol) pos = false;
      }
      f.positive = pos;
      f.strictly_positive = pos && blk::full_rank(z.blocks());
    }
  }
  f.bounded = z.norm() < 1.0;
  return f;
}

AdjointableOp defect_of(const AdjointableOp& z) {
  // (1 - z*z)^{1/2}; the floor check rejects ||z|| = 1 configurations.
  const auto ztz = blk::mul(blk::adjoint(z.blocks()), z.blocks());
  blk::MatList one_minus;
  for (const auto& b : ztz)
    one_minus.push_back(Eigen::MatrixXcd::Identity(b.rows(), b.cols()) - b);
  auto root = blk::hermitian_apply(
      one_minus, [](double t) { return std::sqrt(std::max(t, 0.0)); }, /*require_floor=*/true);
  return AdjointableOp(z.domain(), z.domain(), std::move(root));
}

}  // namespace

RegularOp RegularOp::from_z(AdjointableOp z) {
  if (z.norm() > 1.0 + 1e-12)
    throw Error("z-transform must be a contraction, got norm " + std::to_string(z.norm()));
  AdjointableOp defect = defect_of(z);
  OpFlags flags = compute_flags(z, kDefaultTol);
  return RegularOp(std::move(z), std::move(defect), flags);
}

RegularOp RegularOp::from_bounded(const AdjointableOp& t) {
  const auto w = blk::mul(blk::adjoint(t.blocks()), t.blocks());
  blk::MatList one_plus;
  for (const auto& b : w)
    one_plus.push_back(Eigen::MatrixXcd::Identity(b.rows(), b.cols()) + b);
  auto inv_root = blk::hermitian_apply(one_plus, [](double s) { return 1.0 / std::sqrt(s); },
                                       /*require_floor=*/true);
  AdjointableOp factor(t.domain(), t.domain(), std::move(inv_root));
  return from_z(t * factor);
}

AdjointableOp RegularOp::bounded() const {
  const auto ztz = blk::mul(blk::adjoint(z_.blocks()), z_.blocks());
  blk::MatList one_minus;
  for (const auto& b : ztz)
    one_minus.push_back(Eigen::MatrixXcd::Identity(b.rows(), b.cols()) - b);
  auto inv_root = blk::hermitian_apply(one_minus, [](double s) { return 1.0 / std::sqrt(s); },
                                       /*require_floor=*/true);
  return z_ * AdjointableOp(z_.domain(), z_.domain(), std::move(inv_root));
}

RegularOp RegularOp::adjoint() const { return from_z(z_.adjoint()); }

OpFlags classify(const RegularOp& r, double tol) { return compute_flags(r.z(), tol); }

RegularOp t_star_t(const RegularOp& r) {
  // T*T = w (1-w)^{-1} with w = z*z; Lance: (1 + T*T)^{-1} = 1 - z*z.
  const auto w = blk::mul(blk::adjoint(r.z().blocks()), r.z().blocks());
  auto s = blk::hermitian_apply(
      w,
      [](double t) {
        const double d = 1.0 - t;
        if (d < kEigFloor) throw UnboundedOperator("T*T defect below floor");
        return std::max(t, 0.0) / d;
      },
      false);
  return RegularOp::from_bounded(AdjointableOp(r.domain(), r.domain(), std::move(s)));
}

RegularOp absolute_value(const RegularOp& r) {
  const auto w = blk::mul(blk::adjoint(r.z().blocks()), r.z().blocks());
  auto s = blk::hermitian_apply(
      w,
      [](double t) {
        const double d = 1.0 - t;
        if (d < kEigFloor) throw UnboundedOperator("|T| defect below floor");
        return std::sqrt(std::max(t, 0.0) / d);
      },
      false);
  return RegularOp::from_bounded(AdjointableOp(r.domain(), r.domain(), std::move(s)));
}

AdjointableOp right_multiply(const RegularOp& t, const AdjointableOp& x) {
  return t.bounded() * x;
}

AdjointableOp left_multiply(const AdjointableOp& x, const RegularOp& t) {
  return x * t.bounded();
}

AdjointableOp middle_multiply(const RegularOp& s, const AdjointableOp& x, const RegularOp& t) {
  return s.bounded() * x * t.bounded();
}

bool is_invertible(const RegularOp& r, double rel_tol) {
  if (r.domain() != r.codomain() && r.domain().rank() != r.codomain().rank()) return false;
  for (const auto& b : r.z().blocks()) {
    if (b.rows() != b.cols()) return false;
    if (b.rows() == 0) continue;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b);
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0 || sv(sv.size() - 1) < rel_tol * sv(0)) return false;
  }
  return true;
}

RegularOp invert(const RegularOp& r) {
  if (!is_invertible(r)) throw NotInvertible();
  if (r.flags().normal) {
    // Eigenvalue reciprocation straight through the z-eigensystem.
    const blk::Eigensystem es = blk::eigensystem(r.z().blocks());
    blk::MatList z;
    for (const auto& b : r.z().blocks()) z.push_back(Eigen::MatrixXcd::Zero(b.rows(), b.cols()));
    for (size_t i = 0; i < es.eigenvalues.size(); ++i) {
      const std::complex<double> c =
          functions::clamp_to_open_disc(es.eigenvalues[i], kEigFloor);
      const std::complex<double> w =
          functions::zmap_point(1.0 / functions::zmap_inverse_point(c));
      for (size_t k = 0; k < z.size(); ++k) z[k] += w * es.projections[i][k];
    }
    return RegularOp::from_z(AdjointableOp(r.codomain(), r.domain(), std::move(z)));
  }
  const AdjointableOp b = r.bounded();
  blk::MatList inv;
  for (const auto& m : b.blocks()) inv.push_back(m.partialPivLu().inverse());
  return RegularOp::from_bounded(AdjointableOp(b.codomain(), b.domain(), std::move(inv)));
}

bool is_adjointable_invertible(const RegularOp& r, double rel_tol) {
  // Finite-rank degeneracy: identical to is_invertible. The separation is
  // exercised by the symbolic model only.
  return is_invertible(r, rel_tol);
}

Eigen::MatrixXcd localize_op(const LocalizedSpace& s, const RegularOp& r) {
  return localize_op(s, r.z());
}

}  // namespace opmod
