// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "opmod/module_space.hpp"
#include "opmod/regular.hpp"
#include "opmod/rng.hpp"

using namespace opmod;
using C = std::complex<double>;

namespace {

ModuleVector random_vector(Rng& rng, const ModuleDescriptor& d) {
  std::vector<Eigen::MatrixXcd> blocks;
  for (int k = 0; k < d.algebra().blocks(); ++k) {
    const int dim = d.algebra().dim(k);
    Eigen::MatrixXcd m(d.rank() * dim, dim);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) m(i, j) = rng.cgaussian();
    blocks.push_back(m);
  }
  return ModuleVector(d, std::move(blocks));
}

AdjointableOp random_endo(Rng& rng, const ModuleDescriptor& d) {
  std::vector<Eigen::MatrixXcd> blocks;
  for (int k = 0; k < d.algebra().blocks(); ++k) {
    const int n = d.rank() * d.algebra().dim(k);
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = rng.cgaussian();
    blocks.push_back(m);
  }
  return AdjointableOp(d, d, std::move(blocks));
}

}  // namespace

TEST_CASE("inner product over C") {
  const ModuleDescriptor d(AlgebraDescriptor::scalar(), 1);
  Eigen::MatrixXcd v(1, 1), w(1, 1);
  v << 2.0;
  w << C(0, 3);
  const C ip = inner_product(ModuleVector(d, {v}), ModuleVector(d, {w})).block(0)(0, 0);
  CHECK(std::abs(ip - C(0, -6)) == 0.0);
}

TEST_CASE("inner product basics") {
  const ModuleDescriptor d(AlgebraDescriptor::matrix(2), 3);
  const ModuleVector e1 = ModuleVector::basis(d, 1);
  CHECK(norm(inner_product(e1, e1) - AlgebraElement::identity(d.algebra())) == 0.0);

  // b* a with a = b idempotent: the idempotent itself.
  const ModuleDescriptor m1(AlgebraDescriptor::matrix(2), 1);
  Eigen::MatrixXcd p(2, 2);
  p << 1, 0, 0, 0;
  const ModuleVector vp(m1, {p});
  CHECK((inner_product(vp, vp).block(0) - p).norm() == 0.0);
}

TEST_CASE("apply and linearity") {
  Rng rng(3);
  const ModuleDescriptor d(AlgebraDescriptor({2, 1}), 2);
  const ModuleVector v = random_vector(rng, d);
  CHECK((AdjointableOp::identity(d).apply(v) - v).norm() == 0.0);
  CHECK(AdjointableOp::zero(d, d).apply(v).norm() == 0.0);

  // Permutation on A^2 swaps coordinates.
  const AlgebraElement one = AlgebraElement::identity(d.algebra());
  const AlgebraElement zero = AlgebraElement::zero(d.algebra());
  const AdjointableOp swap =
      AdjointableOp::from_entries(d, d, {{zero, one}, {one, zero}});
  const ModuleVector sv = swap.apply(v);
  CHECK(norm(sv.coord(0) - v.coord(1)) == 0.0);
  CHECK(norm(sv.coord(1) - v.coord(0)) == 0.0);

  // A-linearity of the module action.
  Eigen::MatrixXcd a0(2, 2), a1(1, 1);
  a0 << C(1, 1), 0, 2, C(0, -1);
  a1 << 3;
  const AlgebraElement a(d.algebra(), {a0, a1});
  const AdjointableOp x = random_endo(rng, d);
  CHECK((x.apply(v.acted_by(a)) - x.apply(v).acted_by(a)).norm() < 1e-12);
}

TEST_CASE("adjoint pairing") {
  Rng rng(17);
  const ModuleDescriptor d(AlgebraDescriptor({2, 2}), 3);
  for (int t = 0; t < 200; ++t) {
    const AdjointableOp x = random_endo(rng, d);
    const ModuleVector v = random_vector(rng, d), w = random_vector(rng, d);
    const AlgebraElement lhs = inner_product(x.apply(v), w);
    const AlgebraElement rhs = inner_product(v, x.adjoint().apply(w));
    CHECK(norm(lhs - rhs) < 1e-10 * std::max(1.0, norm(lhs)));
  }
}

TEST_CASE("theta") {
  const ModuleDescriptor d1(AlgebraDescriptor::scalar(), 1);
  Eigen::MatrixXcd one(1, 1);
  one << 1.0;
  const ModuleVector u(d1, {one});
  CHECK((theta(u, u) - AdjointableOp::identity(d1)).norm() == 0.0);

  const ModuleDescriptor d2(AlgebraDescriptor::scalar(), 2);
  CHECK(theta(ModuleVector::basis(d2, 0), ModuleVector::zero(d2)).norm() == 0.0);
  const AdjointableOp e12 = theta(ModuleVector::basis(d2, 0), ModuleVector::basis(d2, 1));
  Eigen::MatrixXcd expect(2, 2);
  expect << 0, 1, 0, 0;
  CHECK((e12.blocks()[0] - expect).norm() == 0.0);

  Rng rng(23);
  const ModuleDescriptor d(AlgebraDescriptor({2}), 2);
  const ModuleVector v = random_vector(rng, d), w = random_vector(rng, d);
  CHECK((theta(v, w).adjoint() - theta(w, v)).norm() < 1e-12);

  // theta-affiliation at finite scale: T theta_{v,w} = theta_{Tv,w}.
  const AdjointableOp x = random_endo(rng, d);
  CHECK((x * theta(v, w) - theta(x.apply(v), w)).norm() < 1e-9);
}

TEST_CASE("localize dimensions") {
  const ModuleDescriptor d1(AlgebraDescriptor::scalar(), 1);
  const LocalizedSpace s1 = localize(d1, AlgebraElement::identity(d1.algebra()));
  CHECK(s1.dimension() == 1);

  const LocalizedSpace s0 = localize(d1, AlgebraElement::zero(d1.algebra()));
  CHECK(s0.dimension() == 0);

  // M2 with rho = diag(1,0): Gram rank two.
  const ModuleDescriptor dm(AlgebraDescriptor::matrix(2), 1);
  Eigen::MatrixXcd rho(2, 2);
  rho << 1, 0, 0, 0;
  const LocalizedSpace sm = localize(dm, AlgebraElement(dm.algebra(), {rho}));
  CHECK(sm.dimension() == 2);

  CHECK_THROWS_AS(localize(dm, AlgebraElement(dm.algebra(), {(-rho).eval()})),
                  NotPositiveFunctional);
}

TEST_CASE("localized inner products match omega") {
  Rng rng(31);
  const ModuleDescriptor d(AlgebraDescriptor({2, 1}), 2);
  Eigen::MatrixXcd b0(2, 2), b1(1, 1);
  b0 << 1, C(0.3, 0.1), C(0.3, -0.1), 0.7;
  b1 << 0.5;
  const AlgebraElement rho(d.algebra(), {b0 * b0.adjoint(), b1});
  const LocalizedSpace space = localize(d, rho);
  for (int t = 0; t < 20; ++t) {
    const ModuleVector v = random_vector(rng, d), w = random_vector(rng, d);
    const AlgebraElement ip = inner_product(v, w);
    C omega = 0.0;
    for (int k = 0; k < d.algebra().blocks(); ++k)
      omega += (rho.block(k) * ip.block(k)).trace();
    const C local = localize_vector(space, w).adjoint() * localize_vector(space, v);
    CHECK(std::abs(local - omega) < 1e-9);
  }
}

TEST_CASE("localize_op is a *-homomorphism") {
  Rng rng(41);
  const ModuleDescriptor d(AlgebraDescriptor({2}), 2);
  const AlgebraElement rho = [&] {
    Eigen::MatrixXcd b(2, 2);
    b << 1, C(0.2, 0.4), 0.1, 0.9;
    return AlgebraElement(d.algebra(), {Eigen::MatrixXcd(b.adjoint() * b)});
  }();
  const LocalizedSpace space = localize(d, rho);

  const AdjointableOp x = random_endo(rng, d), y = random_endo(rng, d);
  CHECK((localize_op(space, x * y) - localize_op(space, x) * localize_op(space, y)).norm() <
        1e-9);
  CHECK((localize_op(space, x.adjoint()) - localize_op(space, x).adjoint()).norm() < 1e-9);
  CHECK((localize_op(space, AdjointableOp::identity(d)) -
         Eigen::MatrixXcd::Identity(space.dimension(), space.dimension()))
            .norm() < 1e-10);
  CHECK(blk::opnorm(localize_op(space, x)) <= x.norm() + 1e-10);

  // T_omega(v bar) = (T v) bar.
  const ModuleVector v = random_vector(rng, d);
  CHECK((localize_op(space, x) * localize_vector(space, v) - localize_vector(space, x.apply(v)))
            .norm() < 1e-9);

  // (z_T)_omega = z_{T_omega}; the RegularOp overload hands back that z.
  const RegularOp r = RegularOp::from_bounded(x);
  const Eigen::MatrixXcd z_local = localize_op(space, r);
  const RegularOp r_local =
      RegularOp::from_bounded(AdjointableOp::from_complex_matrix(localize_op(space, x)));
  CHECK((z_local - r_local.z().blocks()[0]).norm() < 1e-9);
}

TEST_CASE("descriptor mismatches raise") {
  const ModuleDescriptor d1(AlgebraDescriptor::scalar(), 1);
  const ModuleDescriptor d2(AlgebraDescriptor::scalar(), 2);
  CHECK_THROWS_AS(inner_product(ModuleVector::zero(d1), ModuleVector::zero(d2)),
                  DescriptorMismatch);
  CHECK_THROWS_AS(AdjointableOp::identity(d1).apply(ModuleVector::zero(d2)), DescriptorMismatch);
  CHECK_THROWS_AS(theta(ModuleVector::zero(d1), ModuleVector::zero(d2)), DescriptorMismatch);
}

TEST_CASE("Cauchy-Schwarz positivity") {
  Rng rng(57);
  for (int t = 0; t < 50; ++t) {
    const ModuleDescriptor d(AlgebraDescriptor({1 + static_cast<int>(rng.next_u64() % 3)}),
                             1 + static_cast<int>(rng.next_u64() % 3));
    const ModuleVector v = random_vector(rng, d);
    CHECK(is_positive(inner_product(v, v)));
  }
}
