// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "opmod/unbounded.hpp"

using namespace opmod;
using C = std::complex<double>;

namespace {

RationalSymbol make(std::vector<C> num, std::vector<C> den) {
  return RationalSymbol(Polynomial(std::move(num)), Polynomial(std::move(den)));
}

const RationalSymbol n_sym = RationalSymbol::variable();          // n
const RationalSymbol decay = make({1.0}, {1.0, 1.0});             // 1/(n+1)
const RationalSymbol shift = make({1.0, 1.0}, {1.0});             // n+1

}  // namespace

TEST_CASE("polynomial basics") {
  const Polynomial p({1.0, 2.0, 1.0});  // (n+1)^2
  CHECK(p.degree() == 2);
  CHECK(std::abs(p.eval(3.0) - 16.0) == 0.0);
  CHECK(Polynomial({0.0, 0.0}).is_zero());
  CHECK((Polynomial({1.0, 1.0}) * Polynomial({1.0, 1.0}) - p).is_zero());
  CHECK(Polynomial({1.0, 1.0}).nowhere_zero_on_naturals());
  CHECK_FALSE(Polynomial({0.0, 1.0}).nowhere_zero_on_naturals());  // zero at n = 0
  CHECK_FALSE(Polynomial({-4.0, 0.0, 1.0}).nowhere_zero_on_naturals());  // zero at n = 2
  CHECK(Polynomial({C(0, 1), 1.0}).nowhere_zero_on_naturals());  // n + i
}

TEST_CASE("denominator certification") {
  CHECK_THROWS_AS(make({1.0}, {0.0, 1.0}), Error);  // den(0) = 0
  CHECK_NOTHROW(make({1.0}, {1.0, 1.0}));
}

TEST_CASE("symbol arithmetic") {
  CHECK((symbol_arith(n_sym, n_sym, SymbolArith::mul) - make({0.0, 0.0, 1.0}, {1.0})).is_zero());
  CHECK((symbol_arith(n_sym, RationalSymbol::constant(0.0), SymbolArith::add) - n_sym).is_zero());
  const RationalSymbol f = make({0.0, C(0, 1)}, {1.0, 1.0});  // i n / (n+1)
  const RationalSymbol g = symbol_arith(f, f, SymbolArith::conj);
  CHECK((g - make({0.0, C(0, -1)}, {1.0, 1.0})).is_zero());
  // Growth of a product adds.
  CHECK((n_sym * n_sym).growth() == 2);
  CHECK((n_sym * decay).growth() == 0);
}

TEST_CASE("c0 and boundedness") {
  CHECK(is_c0(decay));
  CHECK(is_bounded(decay));
  CHECK_FALSE(is_c0(n_sym));
  CHECK_FALSE(is_bounded(n_sym));
  const RationalSymbol r = make({1.0, 1.0}, {2.0, 1.0});  // (n+1)/(n+2)
  CHECK_FALSE(is_c0(r));
  CHECK(is_bounded(r));
  CHECK(is_c0(RationalSymbol::constant(0.0)));
}

TEST_CASE("in_domain") {
  const RationalSymbol g2 = make({1.0}, {1.0, 2.0, 1.0});  // 1/(n+1)^2
  CHECK(in_domain(g2, n_sym));                             // n * 1/(n+1)^2 ~ 1/n
  const RationalSymbol n2 = n_sym * n_sym;
  CHECK_FALSE(in_domain(decay, n2));  // n^2/(n+1) ~ n
  CHECK(in_domain(decay, make({1.0, 1.0}, {2.0, 1.0})));
  CHECK_THROWS_AS(in_domain(n_sym, decay), NotInC0);
}

TEST_CASE("invertibility") {
  CHECK(invertible_symbol(decay));
  CHECK((invert_symbol(decay) - shift).is_zero());
  CHECK_FALSE(invertible_symbol(n_sym));
  CHECK(invertible_symbol(shift));
  CHECK_THROWS_AS(invert_symbol(n_sym), NotInvertible);

  CHECK(adjointable_invertible_symbol(shift));
  CHECK_FALSE(adjointable_invertible_symbol(decay));
  CHECK(adjointable_invertible_symbol(RationalSymbol::constant(1.0)));
}

TEST_CASE("compatible_symbol") {
  CompatibleSet halfopen{"(0,1] u {0}",
                         [](C c) {
                           return std::abs(c.imag()) <= 1e-10 && c.real() > 0.0 && c.real() <= 1.0;
                         },
                         {C(0.0)},
                         true};
  CHECK(compatible_symbol(halfopen, decay));
  CHECK(compatible_symbol(sets::whole_plane(), n_sym));

  CompatibleSet punctured{"C\\{5}", [](C c) { return std::abs(c - C(5.0)) > 1e-10; }, {C(5.0)},
                          true};
  CHECK_FALSE(compatible_symbol(punctured, n_sym));

  CompatibleSet undecided{"undecided", [](C) { return std::optional<bool>(); }, {}, true};
  CHECK_THROWS_AS(compatible_symbol(undecided, decay), UndecidableMembership);

  // A constant symbol punctured at its own value: the shift cancels to
  // dust, which must still read as the zero symbol (not invertible).
  const RationalSymbol cst = make({C(3, -1)}, {C(-1, -2)});
  const C v = cst.eval(5);
  CHECK(cst.shifted(v).is_zero());
  CompatibleSet punct{"punctured", [v](C c) { return std::abs(c - v) > 1e-10; }, {v}, true};
  CHECK_FALSE(compatible_symbol(punct, cst));
}

TEST_CASE("oracle_compare") {
  const WindowConfig cfg{64, "leading-monomial-dominance"};
  {
    // The identity rides the z-transform round trip, whose absolute error
    // grows like (1 + t^2) eps at a diagonal entry t; at window 64 that
    // still sits far below 1e-9.
    const OracleReport rep = oracle_compare(n_sym, functions::id(), sets::whole_plane(), cfg);
    CHECK(rep.max_residual < 1e-9);
    CHECK(rep.domains_agree);
  }
  {
    const OracleReport rep = oracle_compare(n_sym, functions::zmap(), sets::whole_plane(), cfg);
    CHECK(rep.max_residual <= 1e-10);
    CHECK(rep.offdiagonal_residual <= 1e-10);
  }
  {
    const ScalarFunction expneg{"exp(-t)", [](C c) { return std::exp(-c); }};
    const OracleReport rep = oracle_compare(n_sym, expneg, sets::whole_plane(), cfg);
    CHECK(rep.max_residual <= 1e-10);
  }
  CHECK_THROWS_AS(oracle_compare(n_sym, functions::id(), sets::whole_plane(), WindowConfig{4}),
                  Error);
}

TEST_CASE("measured classes agree on the standard examples") {
  const int window = 10000;
  CHECK(measured_c0(decay, window));
  CHECK_FALSE(measured_c0(n_sym, window));
  CHECK(measured_bounded(make({1.0, 1.0}, {2.0, 1.0}), window));
  CHECK_FALSE(measured_bounded(n_sym, window));
  CHECK(measured_invertible(decay, window));
  CHECK_FALSE(measured_invertible(n_sym, window));
  CHECK(measured_adjointable_invertible(shift, window));
  CHECK_FALSE(measured_adjointable_invertible(decay, window));
}

TEST_CASE("symbolic multipliers and DomainViolation") {
  // decay is a right multiplier of n (product bounded), n is not a
  // multiplier of n^2/(n+1) (product unbounded).
  CHECK((right_multiply_symbol(n_sym, decay) - make({0.0, 1.0}, {1.0, 1.0})).is_zero());
  CHECK_THROWS_AS(right_multiply_symbol(n_sym * n_sym, decay), DomainViolation);
  CHECK_THROWS_AS(right_multiply_symbol(decay, n_sym), NotInC0);  // unbounded multiplier
  CHECK((left_multiply_symbol(decay, n_sym) - right_multiply_symbol(n_sym, decay)).is_zero());
  // Middle multiplier: 1/(n+1)^2 between two copies of n closes.
  const RationalSymbol g2 = make({1.0}, {1.0, 2.0, 1.0});
  CHECK(is_bounded(middle_multiply_symbol(n_sym, g2, n_sym)));
  CHECK_THROWS_AS(middle_multiply_symbol(n_sym * n_sym, g2, n_sym), DomainViolation);
}

TEST_CASE("regression: invertible but not adjointable invertible") {
  CHECK(invertible_symbol(decay));
  CHECK_FALSE(adjointable_invertible_symbol(decay));
  // The inverse is the unbounded symbol n+1.
  CHECK(invert_symbol(decay).growth() == 1);
}

TEST_CASE("intersection law is exact") {
  // D(pi(f) pi(g)) = D(pi(g)) n D(pi(f g)) restated for symbol decisions.
  const std::vector<RationalSymbol> fs = {n_sym, decay, shift, n_sym * n_sym,
                                          RationalSymbol::constant(2.0)};
  const Polynomial lin({1.0, 1.0});
  for (const auto& f : fs)
    for (const auto& g : fs) {
      Polynomial den = Polynomial::constant(1.0);
      for (int j = 1; j <= 4; ++j) {
        den = den * lin;
        const RationalSymbol c(Polynomial::constant(1.0), den);
        const bool lhs = is_c0(c) && is_c0(g * c) && is_c0(f * (g * c));
        const bool rhs = is_c0(c) && is_c0(g * c) && is_c0((f * g) * c);
        CHECK(lhs == rhs);
      }
    }
}

TEST_CASE("window sup reports max and tail class") {
  const WindowConfig cfg{64, "leading-monomial-dominance"};
  const WindowSup su = window_sup(n_sym, cfg);
  CHECK(su.window_max == 64.0);
  CHECK_FALSE(su.tail_bounded);  // the window max is not the true sup here
  const WindowSup sd = window_sup(decay, cfg);
  CHECK(sd.window_max == 1.0);
  CHECK(sd.tail_vanishing);
}

TEST_CASE("json serialization") {
  CHECK(decay.to_json() == "{\"num\":[[1,0]],\"den\":[[1,0],[1,0]]}");
  const RationalSymbol f = make({0.0, C(0, -1)}, {1.0, 1.0});
  CHECK(f.to_json() == "{\"num\":[[0,0],[0,-1]],\"den\":[[1,0],[1,0]]}");
}

TEST_CASE("composition growth table") {
  CHECK(composition_growth("powk", 2.0, n_sym) == 2);
  CHECK(composition_growth("powk", 0.5, n_sym * n_sym) == 1);
  CHECK(composition_growth("expneg", 0.0, n_sym).value() < -100);
  CHECK_FALSE(composition_growth("expneg", 0.0, decay).has_value());
  CHECK_FALSE(composition_growth("mystery", 0.0, n_sym).has_value());
}
