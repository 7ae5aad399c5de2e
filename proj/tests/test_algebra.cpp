// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "opmod/algebra.hpp"
#include "opmod/rng.hpp"

using namespace opmod;
using C = std::complex<double>;

namespace {

AlgebraElement mat2(const AlgebraDescriptor& d, C a, C b, C c, C e) {
  Eigen::MatrixXcd m(2, 2);
  m << a, b, c, e;
  return AlgebraElement(d, {m});
}

AlgebraElement random_element(Rng& rng, const AlgebraDescriptor& d) {
  std::vector<Eigen::MatrixXcd> blocks;
  for (int k = 0; k < d.blocks(); ++k) {
    Eigen::MatrixXcd m(d.dim(k), d.dim(k));
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) m(i, j) = rng.cgaussian();
    blocks.push_back(m);
  }
  return AlgebraElement(d, std::move(blocks));
}

}  // namespace

TEST_CASE("descriptor invariants") {
  CHECK_THROWS_AS(AlgebraDescriptor(std::vector<int>{}), Error);
  CHECK_THROWS_AS(AlgebraDescriptor({2, 0}), Error);
  CHECK(AlgebraDescriptor({1, 1, 1}).commutative());
  CHECK_FALSE(AlgebraDescriptor({1, 2}).commutative());
  CHECK(AlgebraDescriptor({2, 3}).total_dim() == 13);
}

TEST_CASE("star") {
  const auto d1 = AlgebraDescriptor::scalar();
  Eigen::MatrixXcd i1(1, 1);
  i1 << C(0, 1);
  const AlgebraElement a(d1, {i1});
  CHECK(std::abs(star(a).block(0)(0, 0) - C(0, -1)) == 0.0);

  const auto d2 = AlgebraDescriptor::matrix(2);
  CHECK(norm(star(AlgebraElement::identity(d2)) - AlgebraElement::identity(d2)) == 0.0);

  const AlgebraElement n = mat2(d2, 0, 1, 0, 0);
  const AlgebraElement nt = mat2(d2, 0, 0, 1, 0);
  CHECK(norm(star(n) - nt) == 0.0);
  CHECK(norm(star(star(n)) - n) == 0.0);
}

TEST_CASE("norm") {
  const auto d2 = AlgebraDescriptor::matrix(2);
  CHECK(norm(mat2(d2, 3, 0, 0, -4)) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(norm(AlgebraElement::zero(d2)) == 0.0);
  // Singular values via a*a: eigenvalues {0, 4}, so norm 2.
  CHECK(norm(mat2(d2, 0, 2, 0, 0)) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("is_positive") {
  const auto d2 = AlgebraDescriptor::matrix(2);
  // Characteristic polynomial x^2 - 4x + 3: eigenvalues 1 and 3.
  CHECK(is_positive(mat2(d2, 2, 1, 1, 2)));
  CHECK_FALSE(is_positive(mat2(d2, 0, 1, 0, 0)));
  CHECK_FALSE(is_positive(-AlgebraElement::identity(d2)));
}

TEST_CASE("normal_eigensystem basics") {
  const auto d2 = AlgebraDescriptor::matrix(2);
  {
    const auto es = normal_eigensystem(mat2(d2, 1, 0, 0, C(0, 1)));
    REQUIRE(es.eigenvalues.size() == 2);
    // Sorted by (re, im): i before 1.
    CHECK(std::abs(es.eigenvalues[0] - C(0, 1)) < 1e-12);
    CHECK(std::abs(es.eigenvalues[1] - C(1, 0)) < 1e-12);
    CHECK(norm(es.projections[1] - mat2(d2, 1, 0, 0, 0)) < 1e-12);
  }
  {
    const auto es = normal_eigensystem(AlgebraElement::identity(d2));
    REQUIRE(es.eigenvalues.size() == 1);
    CHECK(norm(es.projections[0] - AlgebraElement::identity(d2)) < 1e-12);
  }
  {
    // Roots of x^2 + 1.
    const auto es = normal_eigensystem(mat2(d2, 0, -1, 1, 0));
    REQUIRE(es.eigenvalues.size() == 2);
    CHECK(std::abs(es.eigenvalues[0] - C(0, -1)) < 1e-12);
    CHECK(std::abs(es.eigenvalues[1] - C(0, 1)) < 1e-12);
  }
  CHECK_THROWS_AS(normal_eigensystem(mat2(d2, 0, 1, 0, 0)), NotNormal);
}

TEST_CASE("eigensystem completeness and reconstruction") {
  Rng rng(2026);
  const AlgebraDescriptor d({2, 3, 1});
  for (int trial = 0; trial < 25; ++trial) {
    AlgebraElement a = random_element(rng, d);
    a = a + star(a);  // selfadjoint
    const auto es = normal_eigensystem(a);
    AlgebraElement sum = AlgebraElement::zero(d);
    AlgebraElement recon = AlgebraElement::zero(d);
    for (size_t i = 0; i < es.eigenvalues.size(); ++i) {
      sum = sum + es.projections[i];
      recon = recon + es.projections[i] * es.eigenvalues[i];
      CHECK(norm(star(es.projections[i]) - es.projections[i]) < 1e-9);
      for (size_t j = 0; j < es.eigenvalues.size(); ++j) {
        const AlgebraElement prod = es.projections[i] * es.projections[j];
        if (i == j)
          CHECK(norm(prod - es.projections[i]) < 1e-9);
        else
          CHECK(norm(prod) < 1e-9);
      }
    }
    CHECK(norm(sum - AlgebraElement::identity(d)) < 1e-9);
    CHECK(norm(recon - a) < 1e-8);
  }
}

TEST_CASE("apply_scalar_function") {
  const auto d2 = AlgebraDescriptor::matrix(2);
  const AlgebraElement t = mat2(d2, 0, 0, 0, std::log(2.0));
  CHECK(norm(apply_scalar_function(t, functions::exp()) - mat2(d2, 1, 0, 0, 2)) < 1e-12);

  Rng rng(7);
  const AlgebraElement a = random_element(rng, AlgebraDescriptor({2, 2}));
  const AlgebraElement n = a + star(a);
  CHECK(norm(apply_scalar_function(n, functions::id()) - n) < 1e-12);

  // zmap on diag(0, 3): 3/sqrt(10).
  const AlgebraElement z = apply_scalar_function(mat2(d2, 0, 0, 0, 3), functions::zmap());
  CHECK(norm(z - mat2(d2, 0, 0, 0, 3.0 / std::sqrt(10.0))) < 1e-12);

  CHECK_THROWS_AS(apply_scalar_function(mat2(d2, 0, 0, 0, 3), functions::recip()),
                  FunctionUndefinedAtSpectrum);
}

TEST_CASE("C*-identity on random elements") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const AlgebraDescriptor d({1 + static_cast<int>(rng.next_u64() % 3),
                               1 + static_cast<int>(rng.next_u64() % 3)});
    const AlgebraElement a = random_element(rng, d);
    CHECK(std::abs(norm(star(a) * a) - norm(a) * norm(a)) <=
          1e-10 * std::max(1.0, norm(a) * norm(a)));
  }
}

TEST_CASE("eigen-level homomorphism") {
  Rng rng(5);
  const AlgebraDescriptor d({3});
  for (int trial = 0; trial < 20; ++trial) {
    AlgebraElement a = random_element(rng, d);
    a = a + star(a);
    const auto f = functions::exp();
    const auto g = functions::sq();
    const ScalarFunction fg{"fg", [&](C c) { return f.eval(c) * g.eval(c); }};
    const AlgebraElement lhs = apply_scalar_function(a, fg);
    const AlgebraElement rhs = apply_scalar_function(a, f) * apply_scalar_function(a, g);
    CHECK(norm(lhs - rhs) < 1e-9 * std::max(1.0, norm(lhs)));
  }
}

TEST_CASE("approximate unit") {
  const auto u2 = approximate_unit(AlgebraDescriptor::matrix(2));
  REQUIRE(u2.size() == 1);
  CHECK(norm(u2[0] - AlgebraElement::identity(AlgebraDescriptor::matrix(2))) == 0.0);

  const auto ucc = approximate_unit(AlgebraDescriptor::commutative(2));
  REQUIRE(ucc.size() == 1);
  CHECK(is_positive(ucc[0]));
}

TEST_CASE("general normal elements diagonalize") {
  Rng rng(11);
  const AlgebraDescriptor d({3, 2});
  for (int trial = 0; trial < 20; ++trial) {
    // Random normal: unitary conjugate of a complex diagonal.
    std::vector<Eigen::MatrixXcd> blocks;
    for (int k = 0; k < d.blocks(); ++k) {
      const int n = d.dim(k);
      Eigen::MatrixXcd g(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = rng.cgaussian();
      const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ();
      Eigen::VectorXcd lam(n);
      for (int i = 0; i < n; ++i) lam(i) = rng.cuniform(2.0);
      blocks.push_back(q * lam.asDiagonal() * q.adjoint());
    }
    const AlgebraElement a(d, blocks);
    const auto es = normal_eigensystem(a);
    AlgebraElement recon = AlgebraElement::zero(d);
    for (size_t i = 0; i < es.eigenvalues.size(); ++i)
      recon = recon + es.projections[i] * es.eigenvalues[i];
    CHECK(norm(recon - a) < 1e-8);
  }
}
