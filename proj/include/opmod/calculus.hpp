// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <utility>

#include "opmod/regular.hpp"

namespace opmod {

/// Spectral points are compared with this absolute tolerance when testing
/// membership of excluded points.
inline constexpr double kSpectralPointTol = 1e-8;

/// Finite multiset of spectral points, sorted lexicographically by (re, im).
struct SpectrumSet {
  std::vector<std::complex<double>> points;
};

double hausdorff_distance(const SpectrumSet& a, const SpectrumSet& b);

/// An almost closed subset of the plane: a membership predicate, the finite
/// excluded list K, and the caller's declaration that membership union K is
/// closed (closedness of an arbitrary predicate is not checkable).
/// membership may return nullopt where it cannot decide.
struct CompatibleSet {
  std::string name;
  std::function<std::optional<bool>(std::complex<double>)> membership;
  std::vector<std::complex<double>> excluded;
  bool closure_witness = true;
};

namespace sets {
CompatibleSet whole_plane();
/// C \ {0} with K = {0}.
CompatibleSet nonzero_plane();
CompatibleSet real_line();
/// [0, inf).
CompatibleSet positive_halfline();
/// (0, inf) with K = {0}.
CompatibleSet strict_positive_halfline();
std::optional<CompatibleSet> lookup(const std::string& name);
}  // namespace sets

/// sigma(T) for normal T: eigenvalues of z mapped through c/(1-|c|^2)^{1/2},
/// with multiplicities.
SpectrumSet spectrum(const RegularOp& r, double tol = kDefaultTol);

/// Same set read off the bounded representative directly; sharper for
/// operators handed over as plain matrices.
SpectrumSet bounded_spectrum(const AdjointableOp& t, double tol = kDefaultTol);

/// Every excluded point leaves T - lambda invertible and every spectral
/// point is a member.
bool check_compatible(const CompatibleSet& g, const RegularOp& r, double tol = kDefaultTol);

/// Eigenvalue-wise calculus through the z-eigensystem; the result is again
/// z-represented, so f may be unbounded on the spectrum as long as it is
/// finite at every spectral point.
RegularOp apply_function(const ScalarFunction& f, const RegularOp& r, const CompatibleSet& g,
                         double tol = kDefaultTol);

/// (sigma(f(T)), f(sigma(T))) for the caller to compare.
std::pair<SpectrumSet, SpectrumSet> spectral_mapping_check(const ScalarFunction& f,
                                                           const RegularOp& r,
                                                           const CompatibleSet& g,
                                                           double tol = kDefaultTol);

/// (g(f(T)), (g o f)(T)) for the caller to compare.
std::pair<RegularOp, RegularOp> compose_check(const ScalarFunction& g, const ScalarFunction& f,
                                              const RegularOp& r, const CompatibleSet& gs,
                                              const CompatibleSet& hs, double tol = kDefaultTol);

/// t^s on a positive operator, s >= 0; T^0 = 1.
RegularOp power_real(const RegularOp& r, double s, double tol = kDefaultTol);

/// t^z on a strictly positive operator; purely imaginary exponents give
/// unitaries.
RegularOp power_complex(const RegularOp& r, std::complex<double> zexp, double tol = kDefaultTol);

RegularOp exp_op(const RegularOp& r, double tol = kDefaultTol);
RegularOp ln_op(const RegularOp& r, double tol = kDefaultTol);

/// Bounded inverse of T - c for c off the spectrum.
AdjointableOp resolvent(const RegularOp& r, std::complex<double> c, double tol = kDefaultTol);

/// The closed operator T . f(T*T); equals f(TT*) . T. G must be compatible
/// with both T*T and TT*.
RegularOp balanced_product(const RegularOp& t, const ScalarFunction& f, const CompatibleSet& g,
                           double tol = kDefaultTol);

}  // namespace opmod
