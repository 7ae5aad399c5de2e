// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "opmod/commuting.hpp"
#include "opmod/rng.hpp"
#include "opmod/tensor.hpp"

using namespace opmod;
using C = std::complex<double>;

namespace {

AdjointableOp cmat(std::initializer_list<std::initializer_list<C>> rows) {
  const int r = static_cast<int>(rows.size());
  const int c = static_cast<int>(rows.begin()->size());
  Eigen::MatrixXcd m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return AdjointableOp::from_complex_matrix(m);
}

RegularOp reg(std::initializer_list<std::initializer_list<C>> rows) {
  return RegularOp::from_bounded(cmat(rows));
}

}  // namespace

TEST_CASE("commutes") {
  const RegularOp s = reg({{1.0, 0.0}, {0.0, 2.0}});
  CHECK(commutes(s, s, 1e-10));
  CHECK(commutes(s, reg({{5.0, 0.0}, {0.0, -3.0}}), 1e-10));
  // Diagonal against a rotation: z-transforms do not commute.
  CHECK_FALSE(commutes(s, reg({{0.0, -1.0}, {1.0, 0.0}}), 1e-8));
  CHECK_THROWS_AS(commutes(reg({{0.0, 1.0}, {0.0, 0.0}}), s, 1e-8), NotNormal);
  CHECK_THROWS_AS(make_commuting_pair(s, reg({{0.0, -1.0}, {1.0, 0.0}}), 1e-8), NotCommuting);
}

TEST_CASE("joint calculus on diagonal pairs") {
  const RegularOp s = reg({{1.0, 0.0}, {0.0, 2.0}});
  const RegularOp t = reg({{10.0, 0.0}, {0.0, 20.0}});
  const CommutingPair pair = make_commuting_pair(s, t, 1e-10);

  const JointFunction first{"s", [](C a, C) { return a; }};
  CHECK((joint_calculus(first, pair, sets::whole_plane(), sets::whole_plane()).bounded() -
         s.bounded())
            .norm() < 1e-11);

  CHECK((dot_sum(pair).bounded() - cmat({{11.0, 0.0}, {0.0, 22.0}})).norm() < 1e-10);

  const RegularOp t2 = reg({{3.0, 0.0}, {0.0, 5.0}});
  const CommutingPair pair2 = make_commuting_pair(s, t2, 1e-10);
  CHECK((dot_product(pair2).bounded() - cmat({{3.0, 0.0}, {0.0, 10.0}})).norm() < 1e-10);

  CHECK_THROWS_AS(joint_calculus(first, CommutingPair{s, t, false}, sets::whole_plane(),
                                 sets::whole_plane()),
                  NotCommuting);
}

TEST_CASE("dot identities") {
  Rng rng(12);
  const ModuleDescriptor d(AlgebraDescriptor({2}), 2);
  // Commuting pair through a shared eigenbasis.
  Eigen::MatrixXcd g(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = rng.cgaussian();
  const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ();
  Eigen::VectorXcd la(4), lb(4);
  for (int i = 0; i < 4; ++i) {
    la(i) = 0.3 + rng.uniform();
    lb(i) = 0.3 + rng.uniform();
  }
  const AdjointableOp sa(d, d, {q * la.asDiagonal() * q.adjoint()});
  const AdjointableOp sb(d, d, {q * lb.asDiagonal() * q.adjoint()});
  const RegularOp s = RegularOp::from_bounded(sa), t = RegularOp::from_bounded(sb);
  const CommutingPair pair = make_commuting_pair(s, t, 1e-9);

  const RegularOp ident = RegularOp::from_bounded(AdjointableOp::identity(d));
  const CommutingPair with_id = make_commuting_pair(s, ident, 1e-9);
  CHECK((dot_product(with_id).bounded() - s.bounded()).norm() < 1e-10);

  const RegularOp zero = RegularOp::from_bounded(AdjointableOp::zero(d, d));
  const CommutingPair with_zero = make_commuting_pair(s, zero, 1e-9);
  CHECK((dot_sum(with_zero).bounded() - s.bounded()).norm() < 1e-10);

  // (S . T)^3 = S^3 . T^3 on commuting positives.
  const RegularOp lhs = power_real(dot_product(pair), 3.0);
  const CommutingPair cubes = make_commuting_pair(power_real(s, 3.0), power_real(t, 3.0), 1e-8);
  CHECK((lhs.bounded() - dot_product(cubes).bounded()).norm() < 1e-8);

  // Resolved against the plain product too.
  CHECK((dot_product(pair).bounded() - sa * sb).norm() < 1e-9);
}

TEST_CASE("fuglede putnam") {
  const RegularOp s = reg({{1.0, 0.0}, {0.0, C(0, 1)}});
  const ModuleDescriptor d = s.domain();
  const std::vector<ScalarFunction> fs = {functions::exp(), functions::conj(), functions::sq()};

  {
    const FpReport rep = fuglede_putnam_check(AdjointableOp::identity(d), s, s, fs, 1e-9);
    CHECK(rep.passed);
    CHECK(rep.adjoint_residual < 1e-12);
    for (const auto& e : rep.entries) CHECK(e.residual < 1e-12);
  }
  {
    const FpReport rep = fuglede_putnam_check(AdjointableOp::zero(d, d), s, s, fs, 1e-9);
    CHECK(rep.passed);
    CHECK(rep.adjoint_residual == 0.0);
  }
  {
    // Unitarily conjugated pair, intertwined by the conjugation.
    Rng rng(9);
    Eigen::MatrixXcd g(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) g(i, j) = rng.cgaussian();
    const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ();
    const AdjointableOp u = AdjointableOp::from_complex_matrix(q);
    const AdjointableOp t = AdjointableOp::from_complex_matrix(
        Eigen::MatrixXcd(q * s.bounded().blocks()[0] * q.adjoint()));
    const FpReport rep = fuglede_putnam_check(u, s, RegularOp::from_bounded(t), fs, 1e-9);
    CHECK(rep.passed);
    CHECK(rep.adjoint_residual < 1e-9);
    for (const auto& e : rep.entries) CHECK(e.residual < 1e-9);
  }
  {
    // No intertwining at all: the check is vacuous and must say so.
    const RegularOp t = reg({{5.0, 0.0}, {0.0, -7.0}});
    CHECK_THROWS_AS(fuglede_putnam_check(AdjointableOp::identity(d), s, t, fs, 1e-9),
                    IntertwiningViolated);
  }
}

TEST_CASE("tensor modules and elementary tensors") {
  const ModuleDescriptor e(AlgebraDescriptor({2, 1}), 2);
  const ModuleDescriptor f(AlgebraDescriptor({2}), 3);
  const TensorModule tm = tensor_module(e, f);
  CHECK(tm.combined.rank() == 6);
  CHECK(tm.combined.algebra().block_dims() == std::vector<int>{4, 2});

  Rng rng(14);
  auto rand_vec = [&](const ModuleDescriptor& d) {
    std::vector<Eigen::MatrixXcd> blocks;
    for (int k = 0; k < d.algebra().blocks(); ++k) {
      const int dim = d.algebra().dim(k);
      Eigen::MatrixXcd m(d.rank() * dim, dim);
      for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) = rng.cgaussian();
      blocks.push_back(m);
    }
    return ModuleVector(d, blocks);
  };
  const ModuleVector v1 = rand_vec(e), v2 = rand_vec(e), w1 = rand_vec(f), w2 = rand_vec(f);
  // <v1 (x) w1, v2 (x) w2> = <v1,v2> (x) <w1,w2>.
  const AlgebraElement lhs = inner_product(tensor_vector(v1, w1), tensor_vector(v2, w2));
  const AlgebraElement rhs = tensor_elem(inner_product(v1, v2), inner_product(w1, w2));
  CHECK(norm(lhs - rhs) < 1e-10 * std::max(1.0, norm(rhs)));
}

TEST_CASE("tensor operators") {
  const RegularOp s = reg({{1.0, 0.0}, {0.0, 2.0}});
  const RegularOp t = reg({{3.0}});
  CHECK((tensor_op(s, t).bounded() - cmat({{3.0, 0.0}, {0.0, 6.0}})).norm() < 1e-11);

  Rng rng(15);
  Eigen::MatrixXcd a(2, 2), b(3, 3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = rng.cgaussian();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b(i, j) = rng.cgaussian();
  const AdjointableOp sa = AdjointableOp::from_complex_matrix(a);
  const AdjointableOp tb = AdjointableOp::from_complex_matrix(b);

  const AdjointableOp prod = tensor_bounded(sa, tb);
  CHECK(std::abs(prod.norm() - sa.norm() * tb.norm()) < 1e-12);
  CHECK(std::abs(tensor_bounded(sa, AdjointableOp::identity(tb.domain())).norm() - sa.norm()) <
        1e-12);
  CHECK((prod.adjoint() - tensor_bounded(sa.adjoint(), tb.adjoint())).norm() < 1e-12);

  // (S (x) T)(v (x) w) = Sv (x) Tw.
  Eigen::MatrixXcd vv(2, 1), ww(3, 1);
  for (int i = 0; i < 2; ++i) vv(i, 0) = rng.cgaussian();
  for (int i = 0; i < 3; ++i) ww(i, 0) = rng.cgaussian();
  const ModuleVector v(sa.domain(), {vv}), w(tb.domain(), {ww});
  CHECK((prod.apply(tensor_vector(v, w)) - tensor_vector(sa.apply(v), tb.apply(w))).norm() <
        1e-12);
}

TEST_CASE("tensor with commuting machinery") {
  const RegularOp s = reg({{1.0, 0.5}, {0.5, 2.0}});
  const RegularOp t = reg({{0.5, C(0, 0.25)}, {C(0, -0.25), 1.5}});
  const ModuleDescriptor e = s.domain(), f = t.domain();
  const RegularOp s1 =
      tensor_op(s, RegularOp::from_bounded(AdjointableOp::identity(f)));
  const RegularOp t1 =
      tensor_op(RegularOp::from_bounded(AdjointableOp::identity(e)), t);
  const CommutingPair pair = make_commuting_pair(s1, t1, 1e-9);
  CHECK((dot_product(pair).bounded() - tensor_op(s, t).bounded()).norm() < 1e-9);
}
