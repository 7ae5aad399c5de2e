// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "opmod/unbounded.hpp"

#include <algorithm>
#include <cmath>

#include "opmod/canonical_json.hpp"

namespace opmod {

namespace {
constexpr double kCoeffStrip = 1e-12;
constexpr double kZeroMargin = 1e-9;
}  // namespace

Polynomial::Polynomial(std::vector<std::complex<double>> coeffs) : c_(std::move(coeffs)) {
  double maxabs = 0.0;
  for (const auto& c : c_) maxabs = std::max(maxabs, std::abs(c));
  while (!c_.empty() && std::abs(c_.back()) <= kCoeffStrip * maxabs) c_.pop_back();
  if (maxabs == 0.0) c_.clear();
}

std::complex<double> Polynomial::eval(double x) const {
  std::complex<double> acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<std::complex<double>> out(std::max(c_.size(), o.c_.size()), 0.0);
  for (size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) out[i] += o.c_[i];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  std::vector<std::complex<double>> out(std::max(c_.size(), o.c_.size()), 0.0);
  for (size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) out[i] -= o.c_[i];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return Polynomial();
  std::vector<std::complex<double>> out(c_.size() + o.c_.size() - 1, 0.0);
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::conj() const {
  std::vector<std::complex<double>> out;
  out.reserve(c_.size());
  for (const auto& c : c_) out.push_back(std::conj(c));
  return Polynomial(std::move(out));
}

int Polynomial::dominance_bound() const {
  if (is_zero() || degree() == 0) return 0;
  double sum = 0.0;
  for (size_t i = 0; i + 1 < c_.size(); ++i) sum += std::abs(c_[i]);
  return 1 + static_cast<int>(std::ceil(sum / std::abs(leading())));
}

bool Polynomial::nowhere_zero_on_naturals() const {
  if (is_zero()) return false;
  const int bound = dominance_bound();
  for (int n = 0; n <= bound; ++n) {
    double scale = 0.0;
    const double nn = std::max(1.0, static_cast<double>(n));
    double p = 1.0;
    for (const auto& c : c_) {
      scale += std::abs(c) * p;
      p *= nn;
    }
    if (std::abs(eval(n)) <= kZeroMargin * scale) return false;
  }
  return true;
}

RationalSymbol::RationalSymbol(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (!den_.nowhere_zero_on_naturals())
    throw Error("RationalSymbol: denominator vanishes on the naturals");
}

RationalSymbol RationalSymbol::constant(std::complex<double> c) {
  return RationalSymbol(Polynomial::constant(c), Polynomial::constant(1.0));
}

RationalSymbol RationalSymbol::variable() {
  return RationalSymbol(Polynomial::variable(), Polynomial::constant(1.0));
}

std::complex<double> RationalSymbol::limit_at_infinity() const {
  if (is_zero() || growth() < 0) return 0.0;
  if (growth() > 0) throw Error("limit_at_infinity: symbol is unbounded");
  return num_.leading() / den_.leading();
}

RationalSymbol RationalSymbol::operator+(const RationalSymbol& o) const {
  return RationalSymbol(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalSymbol RationalSymbol::operator-(const RationalSymbol& o) const {
  return RationalSymbol(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalSymbol RationalSymbol::operator*(const RationalSymbol& o) const {
  return RationalSymbol(num_ * o.num_, den_ * o.den_);
}

RationalSymbol RationalSymbol::conj() const {
  return RationalSymbol(num_.conj(), den_.conj());
}

RationalSymbol RationalSymbol::shifted(std::complex<double> lambda) const {
  // The subtraction can cancel to rounding dust (f constant, lambda a
  // computed value of f), so coefficients are cleaned relative to the
  // operands' scale, not the result's.
  const Polynomial scaled = Polynomial::constant(lambda) * den_;
  double ref = 0.0;
  for (const auto& c : num_.coeffs()) ref = std::max(ref, std::abs(c));
  for (const auto& c : scaled.coeffs()) ref = std::max(ref, std::abs(c));
  const Polynomial diff = num_ - scaled;
  std::vector<std::complex<double>> cleaned;
  for (const auto& c : diff.coeffs())
    cleaned.push_back(std::abs(c) <= 1e-12 * ref ? std::complex<double>(0.0) : c);
  return RationalSymbol(Polynomial(std::move(cleaned)), den_);
}

std::string RationalSymbol::to_json() const {
  auto poly = [](const Polynomial& p) {
    std::string out = "[";
    for (size_t i = 0; i < p.coeffs().size(); ++i) {
      if (i) out += ",";
      out += json::fmt_complex(p.coeffs()[i]);
    }
    return out + "]";
  };
  return "{\"num\":" + poly(num_) + ",\"den\":" + poly(den_) + "}";
}

RationalSymbol symbol_arith(const RationalSymbol& f, const RationalSymbol& g, SymbolArith op) {
  switch (op) {
    case SymbolArith::add: return f + g;
    case SymbolArith::mul: return f * g;
    case SymbolArith::conj: return f.conj();
  }
  throw Error("symbol_arith: bad op");
}

bool is_c0(const RationalSymbol& f) { return f.is_zero() || f.growth() < 0; }

bool is_bounded(const RationalSymbol& f) { return f.is_zero() || f.growth() <= 0; }

bool in_domain(const RationalSymbol& g, const RationalSymbol& f) {
  if (!is_c0(g)) throw NotInC0("domain candidates must be C0 algebra elements");
  return is_c0(f * g);
}

bool invertible_symbol(const RationalSymbol& f) { return f.num().nowhere_zero_on_naturals(); }

RationalSymbol invert_symbol(const RationalSymbol& f) {
  if (!invertible_symbol(f)) throw NotInvertible("symbol has a zero on the naturals");
  return RationalSymbol(f.den(), f.num());
}

bool adjointable_invertible_symbol(const RationalSymbol& f) {
  return invertible_symbol(f) && f.growth() >= 0;
}

RationalSymbol right_multiply_symbol(const RationalSymbol& f, const RationalSymbol& x) {
  if (!is_bounded(x)) throw NotInC0("multiplier must be a bounded symbol");
  const RationalSymbol prod = f * x;
  if (!is_bounded(prod))
    throw DomainViolation("x is not a right multiplier: f*x is unbounded");
  return prod;
}

RationalSymbol left_multiply_symbol(const RationalSymbol& x, const RationalSymbol& f) {
  // Commutative model: x . f closes iff x* is a right multiplier of f*.
  return right_multiply_symbol(f.conj(), x.conj()).conj();
}

RationalSymbol middle_multiply_symbol(const RationalSymbol& s, const RationalSymbol& x,
                                      const RationalSymbol& t) {
  if (!is_bounded(x)) throw NotInC0("multiplier must be a bounded symbol");
  const RationalSymbol prod = s * x * t;
  if (!is_bounded(prod))
    throw DomainViolation("x is not a middle multiplier: s*x*t is unbounded");
  return prod;
}

bool compatible_symbol(const CompatibleSet& g, const RationalSymbol& f) {
  // Excluded points must leave f - lambda invertible; this screens the
  // whole of N exactly, tails included.
  for (const auto& lambda : g.excluded)
    if (!invertible_symbol(f.shifted(lambda))) return false;

  const int bound = std::max({f.num().dominance_bound(), f.den().dominance_bound(), 32});
  auto check_value = [&](std::complex<double> v) -> bool {
    for (const auto& lambda : g.excluded)
      if (std::abs(v - lambda) <= 1e-12) return true;  // the excluded point itself
    const auto member = g.membership(v);
    if (!member.has_value())
      throw UndecidableMembership("membership undecided at a value of the symbol");
    return *member;
  };

  for (int n = 0; n <= bound; ++n)
    if (!check_value(f.eval(n))) return false;
  if (is_bounded(f)) {
    const std::complex<double> limit = f.limit_at_infinity();
    bool excluded_ok = false;
    for (const auto& lambda : g.excluded)
      if (std::abs(limit - lambda) <= 1e-8 && invertible_symbol(f.shifted(lambda)))
        excluded_ok = true;
    if (!excluded_ok) {
      const auto member = g.membership(limit);
      if (!member.has_value())
        throw UndecidableMembership("membership undecided at the limit value");
      if (!*member) return false;
    }
  }
  return true;
}

namespace {

// Log2 slope of |f| across the window tail; the growth degree estimator.
double tail_slope(const RationalSymbol& f, int window) {
  const double hi = std::abs(f.eval(window));
  const double lo = std::abs(f.eval(window / 2));
  if (hi == 0.0 && lo == 0.0) return -1e9;
  if (lo == 0.0) return 1e9;
  if (hi == 0.0) return -1e9;
  return std::log2(hi / lo);
}

}  // namespace

bool measured_c0(const RationalSymbol& f, int window) {
  if (f.is_zero()) return true;
  return tail_slope(f, window) < -0.5;
}

bool measured_bounded(const RationalSymbol& f, int window) {
  if (f.is_zero()) return true;
  return tail_slope(f, window) < 0.5;
}

bool measured_invertible(const RationalSymbol& f, int window) {
  if (f.is_zero()) return false;
  // Integer zeros of the numerator live below the dominance bound; past it
  // the leading monomial dominates, which is the declared tail strategy.
  const int bound = std::min(window, std::max(f.num().dominance_bound(), 16));
  for (int n = 0; n <= bound; ++n) {
    double scale = 0.0;
    const double nn = std::max(1.0, static_cast<double>(n));
    double p = 1.0;
    for (const auto& c : f.num().coeffs()) {
      scale += std::abs(c) * p;
      p *= nn;
    }
    if (std::abs(f.num().eval(n)) <= 1e-9 * std::max(scale, 1e-300)) return false;
  }
  return true;
}

bool measured_adjointable_invertible(const RationalSymbol& f, int window) {
  // Bounded inverse means the symbol itself decays nowhere: growth >= 0.
  if (f.is_zero()) return false;
  return measured_invertible(f, window) && tail_slope(f, window) > -0.5;
}

WindowSup window_sup(const RationalSymbol& f, const WindowConfig& cfg) {
  if (cfg.window_size < 8) throw Error("WindowConfig: window must be >= 8");
  WindowSup out;
  for (int n = 0; n <= cfg.window_size; ++n)
    out.window_max = std::max(out.window_max, std::abs(f.eval(n)));
  out.tail_bounded = is_bounded(f);
  out.tail_vanishing = is_c0(f);
  return out;
}

OracleReport oracle_compare(const RationalSymbol& f, const ScalarFunction& h,
                            const CompatibleSet& g, const WindowConfig& cfg) {
  if (cfg.window_size < 8) throw Error("WindowConfig: window must be >= 8");
  if (!compatible_symbol(g, f)) throw NotCompatible("set incompatible with the symbol");

  const int n = cfg.window_size;
  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) diag(i, i) = f.eval(i);

  const RegularOp r = RegularOp::from_bounded(AdjointableOp::from_complex_matrix(diag));
  const AdjointableOp ht = apply_function(h, r, g).bounded();

  OracleReport rep;
  const Eigen::MatrixXcd& m = ht.blocks()[0];
  for (int i = 0; i <= n; ++i) {
    rep.max_residual = std::max(rep.max_residual, std::abs(m(i, i) - h.eval(f.eval(i))));
    for (int j = 0; j <= n; ++j)
      if (i != j) rep.offdiagonal_residual = std::max(rep.offdiagonal_residual, std::abs(m(i, j)));
  }

  // Domain predictions versus window decay, probed at g_j(n) = 1/(n+1)^j.
  for (int j = 1; j <= 3; ++j) {
    Polynomial den = Polynomial::constant(1.0);
    const Polynomial lin({1.0, 1.0});
    for (int k = 0; k < j; ++k) den = den * lin;
    const RationalSymbol probe(Polynomial::constant(1.0), den);
    const bool predicted = in_domain(probe, f);
    const bool measured = measured_c0(f * probe, 10000);
    rep.domain_probes.push_back({"1/(n+1)^" + std::to_string(j), predicted, measured,
                                 predicted == measured});
    rep.domains_agree = rep.domains_agree && (predicted == measured);
  }
  return rep;
}

std::optional<int> composition_growth(const std::string& h_name, double param,
                                      const RationalSymbol& f) {
  if (f.is_zero()) return 0;
  if (h_name == "powk") {
    const double g = param * f.growth();
    return static_cast<int>(std::lround(g));
  }
  if (h_name == "expneg") return f.growth() >= 0 ? -1000 : std::optional<int>();
  return std::nullopt;
}

}  // namespace opmod
