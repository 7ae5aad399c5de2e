// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "opmod/calculus.hpp"

namespace opmod {

/// A pair of normal regular operators on the same module; certified is set
/// only after the commutation criterion z_S z_T = z_T z_S has passed.
struct CommutingPair {
  RegularOp s, t;
  bool certified = false;
};

/// ||z_S z_T - z_T z_S|| <= tol; both operators must be normal.
bool commutes(const RegularOp& s, const RegularOp& t, double tol = kDefaultTol);

/// Runs commutes() and certifies; raises NotCommuting on failure.
CommutingPair make_commuting_pair(const RegularOp& s, const RegularOp& t,
                                  double tol = kDefaultTol);

/// Two-variable scalar map with a domain predicate over spectral pairs.
struct JointFunction {
  std::string name;
  std::function<std::complex<double>(std::complex<double>, std::complex<double>)> eval;
  std::function<bool(std::complex<double>, std::complex<double>)> defined =
      [](std::complex<double>, std::complex<double>) { return true; };
};

/// h(S,T) by simultaneous diagonalization of z_S and z_T: z_S eigenspaces
/// are refined by z_T restricted to each of them, degenerate clusters
/// merged at the usual 1e-8 rule.
RegularOp joint_calculus(const JointFunction& h, const CommutingPair& pair,
                         const CompatibleSet& f_set, const CompatibleSet& g_set,
                         double tol = kDefaultTol);

/// S . T and S + T (closures), i.e. the joint calculus of st and s+t.
RegularOp dot_product(const CommutingPair& pair, double tol = kDefaultTol);
RegularOp dot_sum(const CommutingPair& pair, double tol = kDefaultTol);

struct FpEntry {
  std::string function;
  double residual;
  bool passed;
};

struct FpReport {
  double intertwine_residual = 0.0;  // ||U S - T U||
  double adjoint_residual = 0.0;     // ||U S* - T* U||
  std::vector<FpEntry> entries;      // ||U f(S) - f(T) U|| per f
  double bound = 0.0;                // 10 * tol
  bool passed = false;
};

/// Verifies the intertwining transfer: given ||U S - T U|| <= tol for
/// normal S, T, reports the adjoint and per-function residuals, all of
/// which must come in under 10 * tol. Raises IntertwiningViolated when the
/// precondition itself fails.
FpReport fuglede_putnam_check(const AdjointableOp& u, const RegularOp& s, const RegularOp& t,
                              const std::vector<ScalarFunction>& fs, double tol = kDefaultTol);

}  // namespace opmod
