// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "opmod/calculus.hpp"

#include <algorithm>
#include <cmath>

namespace opmod {

namespace {

using C = std::complex<double>;

void require_normal(const RegularOp& r, double tol) {
  if (!classify(r, std::max(tol, kDefaultTol)).normal)
    throw NotNormal("operator is not normal within tolerance");
}

struct Spectral {
  std::vector<C> lambda;                 // eigenvalues of T
  std::vector<int> multiplicity;        // block rank of each projection
  std::vector<AdjointableOp> projections;
};

// Shared decomposition: diagonalize z, pull eigenvalues back through the
// inverse of c -> c/(1+|c|^2)^{1/2}.
Spectral spectral_data(const RegularOp& r, double tol) {
  require_normal(r, tol);
  OpEigensystem es = op_eigensystem(r.z(), tol);
  Spectral out;
  for (size_t i = 0; i < es.eigenvalues.size(); ++i) {
    const C c = functions::clamp_to_open_disc(es.eigenvalues[i], kEigFloor);
    out.lambda.push_back(functions::zmap_inverse_point(c));
    double tr = 0.0;
    for (const auto& b : es.projections[i].blocks()) tr += b.trace().real();
    out.multiplicity.push_back(static_cast<int>(std::lround(tr)));
    out.projections.push_back(std::move(es.projections[i]));
  }
  return out;
}

RegularOp reassemble(const RegularOp& r, const Spectral& sp, const std::vector<C>& values) {
  blk::MatList z;
  for (const auto& b : r.z().blocks()) z.push_back(Eigen::MatrixXcd::Zero(b.rows(), b.cols()));
  for (size_t i = 0; i < values.size(); ++i) {
    const C w = functions::zmap_point(values[i]);
    for (size_t k = 0; k < z.size(); ++k) z[k] += w * sp.projections[i].blocks()[k];
  }
  return RegularOp::from_z(AdjointableOp(r.domain(), r.codomain(), std::move(z)));
}

void sort_points(std::vector<C>& pts) {
  std::sort(pts.begin(), pts.end(), [](C a, C b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

}  // namespace

double hausdorff_distance(const SpectrumSet& a, const SpectrumSet& b) {
  if (a.points.empty() && b.points.empty()) return 0.0;
  if (a.points.empty() || b.points.empty()) return std::numeric_limits<double>::infinity();
  double h = 0.0;
  for (const auto& p : a.points) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& q : b.points) d = std::min(d, std::abs(p - q));
    h = std::max(h, d);
  }
  for (const auto& q : b.points) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& p : a.points) d = std::min(d, std::abs(p - q));
    h = std::max(h, d);
  }
  return h;
}

namespace sets {

CompatibleSet whole_plane() {
  return {"all", [](C) { return true; }, {}, true};
}

CompatibleSet nonzero_plane() {
  return {"nonzero", [](C c) { return std::abs(c) > 0.0; }, {C(0.0)}, true};
}

CompatibleSet real_line() {
  return {"real", [](C c) { return std::abs(c.imag()) <= 1e-10; }, {}, true};
}

CompatibleSet positive_halfline() {
  return {"pos", [](C c) { return std::abs(c.imag()) <= 1e-10 && c.real() >= -1e-10; }, {}, true};
}

CompatibleSet strict_positive_halfline() {
  return {"spos", [](C c) { return std::abs(c.imag()) <= 1e-10 && c.real() > 0.0; },
          {C(0.0)},
          true};
}

std::optional<CompatibleSet> lookup(const std::string& name) {
  if (name == "all") return whole_plane();
  if (name == "nonzero") return nonzero_plane();
  if (name == "real") return real_line();
  if (name == "pos") return positive_halfline();
  if (name == "spos") return strict_positive_halfline();
  return std::nullopt;
}

}  // namespace sets

SpectrumSet spectrum(const RegularOp& r, double tol) {
  const Spectral sp = spectral_data(r, tol);
  SpectrumSet s;
  for (size_t i = 0; i < sp.lambda.size(); ++i)
    for (int m = 0; m < sp.multiplicity[i]; ++m) s.points.push_back(sp.lambda[i]);
  sort_points(s.points);
  return s;
}

SpectrumSet bounded_spectrum(const AdjointableOp& t, double tol) {
  const OpEigensystem es = op_eigensystem(t, tol);
  SpectrumSet s;
  for (size_t i = 0; i < es.eigenvalues.size(); ++i) {
    double tr = 0.0;
    for (const auto& b : es.projections[i].blocks()) tr += b.trace().real();
    const int mult = static_cast<int>(std::lround(tr));
    for (int m = 0; m < mult; ++m) s.points.push_back(es.eigenvalues[i]);
  }
  sort_points(s.points);
  return s;
}

bool check_compatible(const CompatibleSet& g, const RegularOp& r, double tol) {
  const Spectral sp = spectral_data(r, tol);
  for (const auto& lam : sp.lambda) {
    // An excluded point hit by the spectrum kills invertibility of T - lambda.
    for (const auto& k : g.excluded)
      if (std::abs(lam - k) <= kSpectralPointTol) return false;
    const auto member = g.membership(lam);
    if (!member.has_value() || !*member) return false;
  }
  return true;
}

RegularOp apply_function(const ScalarFunction& f, const RegularOp& r, const CompatibleSet& g,
                         double tol) {
  const Spectral sp = spectral_data(r, tol);
  if (!check_compatible(g, r, tol))
    throw NotCompatible("set '" + g.name + "' is not compatible with the operator");
  std::vector<C> values;
  values.reserve(sp.lambda.size());
  for (const auto& lam : sp.lambda) {
    if (!f.defined(lam))
      throw FunctionUndefinedAtSpectrum(f.name + " undefined at spectral point");
    const C v = f.eval(lam);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw FunctionUndefinedAtSpectrum(f.name + " not finite at spectral point");
    values.push_back(v);
  }
  return reassemble(r, sp, values);
}

std::pair<SpectrumSet, SpectrumSet> spectral_mapping_check(const ScalarFunction& f,
                                                           const RegularOp& r,
                                                           const CompatibleSet& g, double tol) {
  const RegularOp ft = apply_function(f, r, g, tol);
  SpectrumSet image;
  const Spectral sp = spectral_data(r, tol);
  for (size_t i = 0; i < sp.lambda.size(); ++i)
    for (int m = 0; m < sp.multiplicity[i]; ++m) image.points.push_back(f.eval(sp.lambda[i]));
  sort_points(image.points);
  return {spectrum(ft, tol), image};
}

std::pair<RegularOp, RegularOp> compose_check(const ScalarFunction& g, const ScalarFunction& f,
                                              const RegularOp& r, const CompatibleSet& gs,
                                              const CompatibleSet& hs, double tol) {
  RegularOp inner = apply_function(f, r, gs, tol);
  RegularOp lhs = apply_function(g, inner, hs, tol);
  ScalarFunction composed{
      g.name + "o" + f.name, [g, f](C c) { return g.eval(f.eval(c)); },
      [g, f](C c) { return f.defined(c) && g.defined(f.eval(c)); }};
  RegularOp rhs = apply_function(composed, r, gs, tol);
  return {std::move(lhs), std::move(rhs)};
}

RegularOp power_real(const RegularOp& r, double s, double tol) {
  if (s < 0.0) throw Error("power_real: exponent must be >= 0");
  if (!classify(r, std::max(tol, kDefaultTol)).positive)
    throw NotPositive("power_real needs a positive operator");
  const Spectral sp = spectral_data(r, tol);
  std::vector<C> values;
  for (const auto& lam : sp.lambda) {
    const double t = std::max(lam.real(), 0.0);
    values.push_back(t == 0.0 ? (s == 0.0 ? 1.0 : 0.0) : std::pow(t, s));
  }
  return reassemble(r, sp, values);
}

RegularOp power_complex(const RegularOp& r, C zexp, double tol) {
  if (!classify(r, std::max(tol, kDefaultTol)).strictly_positive)
    throw NotStrictlyPositive("power_complex needs a strictly positive operator");
  const Spectral sp = spectral_data(r, tol);
  std::vector<C> values;
  for (const auto& lam : sp.lambda) {
    const double t = lam.real();
    if (t <= 0.0) throw NotStrictlyPositive("spectral point not strictly positive");
    values.push_back(std::exp(zexp * std::log(t)));
  }
  return reassemble(r, sp, values);
}

RegularOp exp_op(const RegularOp& r, double tol) {
  const Spectral sp = spectral_data(r, tol);
  std::vector<C> values;
  for (const auto& lam : sp.lambda) values.push_back(std::exp(lam));
  return reassemble(r, sp, values);
}

RegularOp ln_op(const RegularOp& r, double tol) {
  if (!classify(r, std::max(tol, kDefaultTol)).strictly_positive)
    throw NotStrictlyPositive("ln needs a strictly positive operator");
  const Spectral sp = spectral_data(r, tol);
  std::vector<C> values;
  for (const auto& lam : sp.lambda) {
    const double t = lam.real();
    if (t <= 0.0) throw NotStrictlyPositive("spectral point not strictly positive");
    values.push_back(std::log(t));
  }
  return reassemble(r, sp, values);
}

AdjointableOp resolvent(const RegularOp& r, C c, double tol) {
  const Spectral sp = spectral_data(r, tol);
  const double hit_tol = std::max(tol, kSpectralPointTol);
  for (const auto& lam : sp.lambda)
    if (std::abs(lam - c) <= hit_tol) throw SpectrumHit("resolvent parameter hits the spectrum");
  blk::MatList out;
  for (const auto& b : r.z().blocks()) out.push_back(Eigen::MatrixXcd::Zero(b.rows(), b.cols()));
  for (size_t i = 0; i < sp.lambda.size(); ++i) {
    const C w = 1.0 / (sp.lambda[i] - c);
    for (size_t k = 0; k < out.size(); ++k) out[k] += w * sp.projections[i].blocks()[k];
  }
  return AdjointableOp(r.domain(), r.codomain(), std::move(out));
}

RegularOp balanced_product(const RegularOp& t, const ScalarFunction& f, const CompatibleSet& g,
                           double tol) {
  const RegularOp tst = t_star_t(t);
  const RegularOp tts = t_star_t(t.adjoint());
  if (!check_compatible(g, tst, tol) || !check_compatible(g, tts, tol))
    throw NotCompatible("set '" + g.name + "' incompatible with T*T or TT*");
  const AdjointableOp rhs = apply_function(f, tst, g, tol).bounded();
  return RegularOp::from_bounded(t.bounded() * rhs);
}

}  // namespace opmod
