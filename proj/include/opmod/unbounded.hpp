// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "opmod/calculus.hpp"

namespace opmod {

/// Complex polynomial in one variable, ascending coefficients, trailing
/// near-zero coefficients stripped. degree() is -1 for the zero polynomial.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<std::complex<double>> coeffs);
  static Polynomial constant(std::complex<double> c) { return Polynomial({c}); }
  static Polynomial variable() { return Polynomial({0.0, 1.0}); }

  const std::vector<std::complex<double>>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::complex<double> leading() const { return c_.back(); }
  std::complex<double> eval(double x) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial conj() const;

  /// First integer past which the leading monomial dominates the rest:
  /// n0 = 1 + ceil(sum |c_i| / |c_lead|). Exact zero screening only needs
  /// to look at [0, n0].
  int dominance_bound() const;

  /// No zeros on the nonneg integers, decided by screening up to the
  /// dominance bound (margin 1e-9 relative to the evaluated scale).
  bool nowhere_zero_on_naturals() const;

 private:
  std::vector<std::complex<double>> c_;
};

/// A multiplication operator on X = N by a rational sequence num/den, with
/// the denominator certified nowhere zero on N. Domain, boundedness,
/// invertibility and compatibility questions are all decidable from the
/// growth degree deg(num) - deg(den) plus exact screenings.
class RationalSymbol {
 public:
  RationalSymbol() : num_(), den_(Polynomial::constant(1.0)) {}
  RationalSymbol(Polynomial num, Polynomial den);
  static RationalSymbol constant(std::complex<double> c);
  /// f(n) = n.
  static RationalSymbol variable();

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  /// deg(num) - deg(den); only meaningful for nonzero symbols.
  int growth() const { return num_.degree() - den_.degree(); }
  std::complex<double> eval(double n) const { return num_.eval(n) / den_.eval(n); }
  /// Limit at infinity of a bounded symbol (0 when growth < 0).
  std::complex<double> limit_at_infinity() const;

  RationalSymbol operator+(const RationalSymbol& o) const;
  RationalSymbol operator-(const RationalSymbol& o) const;
  RationalSymbol operator*(const RationalSymbol& o) const;
  RationalSymbol conj() const;
  RationalSymbol shifted(std::complex<double> lambda) const;  // f - lambda

  /// {"num": [[re,im],...], "den": [[re,im],...]}
  std::string to_json() const;

 private:
  Polynomial num_, den_;
};

enum class SymbolArith { add, mul, conj };
RationalSymbol symbol_arith(const RationalSymbol& f, const RationalSymbol& g, SymbolArith op);

/// growth < 0 (vanishes at infinity); the zero symbol counts.
bool is_c0(const RationalSymbol& f);
/// growth <= 0.
bool is_bounded(const RationalSymbol& f);

/// g in D(f) iff f*g is C0; g itself must be a C0 algebra element.
bool in_domain(const RationalSymbol& g, const RationalSymbol& f);

/// f(n) != 0 for every natural n, by exact screening up to the dominance
/// bound.
bool invertible_symbol(const RationalSymbol& f);
/// Swaps numerator and denominator; raises NotInvertible.
RationalSymbol invert_symbol(const RationalSymbol& f);

/// Invertible with bounded inverse, i.e. growth >= 0 and no zeros.
bool adjointable_invertible_symbol(const RationalSymbol& f);

/// Multiplier closures in the symbolic model, where the domain questions
/// are genuinely decidable. x must be a bounded symbol; it is a right
/// multiplier of f exactly when f*x stays bounded, otherwise the closure
/// has no everywhere-defined representative and DomainViolation is
/// raised. (The fully general middle-multiplier condition between two
/// unbounded operators is undecidable outside this rational class.)
RationalSymbol right_multiply_symbol(const RationalSymbol& f, const RationalSymbol& x);
RationalSymbol left_multiply_symbol(const RationalSymbol& x, const RationalSymbol& f);
RationalSymbol middle_multiply_symbol(const RationalSymbol& s, const RationalSymbol& x,
                                      const RationalSymbol& t);

/// Every value f(n) (and the limit when bounded) lies in G, up to the
/// excluded points, each of which must leave f - lambda invertible.
bool compatible_symbol(const CompatibleSet& g, const RationalSymbol& f);

struct WindowConfig {
  int window_size = 64;  // N >= 8
  std::string tail_bound_strategy = "leading-monomial-dominance";
};

/// Sup-norm measurement over a window. The window max is the true sup only
/// when the tail vanishes; callers must consult the tail class otherwise.
struct WindowSup {
  double window_max = 0.0;
  bool tail_bounded = false;    // growth <= 0
  bool tail_vanishing = false;  // growth < 0
};

WindowSup window_sup(const RationalSymbol& f, const WindowConfig& cfg);

struct DomainProbe {
  std::string probe;
  bool predicted;
  bool measured;
  bool agree;
};

struct OracleReport {
  double max_residual = 0.0;          // diagonal discrepancy of h(T) vs h o f
  double offdiagonal_residual = 0.0;  // h(T) must stay diagonal
  std::vector<DomainProbe> domain_probes;
  bool domains_agree = true;
};

/// Cross-check of the z-transform path against the exact symbolic model:
/// T = diag(f(0..N)) is pushed through from_bounded/apply_function and the
/// diagonal of h(T) is compared with h(f(n)); in_domain predictions are
/// compared against window-decay measurements of canonical probes.
OracleReport oracle_compare(const RationalSymbol& f, const ScalarFunction& h,
                            const CompatibleSet& g, const WindowConfig& cfg);

// Window-decay measurements used both by oracle_compare and the
// decision-agreement tests. The window max is never the true sup when
// growth >= 0; the tail class comes from the dominance bound.
bool measured_c0(const RationalSymbol& f, int window);
bool measured_bounded(const RationalSymbol& f, int window);
bool measured_invertible(const RationalSymbol& f, int window);
bool measured_adjointable_invertible(const RationalSymbol& f, int window);

/// Growth class of h applied to a symbol, per the fixed composition table:
/// t^s scales the growth degree by s; exp(-t) of a symbol with
/// nonnegative-growth real values is C0. nullopt when the table is silent.
std::optional<int> composition_growth(const std::string& h_name, double param,
                                      const RationalSymbol& f);

}  // namespace opmod
