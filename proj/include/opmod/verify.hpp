// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace opmod {

/// One verified identity: per-trial residuals against a pinned tolerance.
/// The anchor names the identity the property checks.
struct PropertyRecord {
  std::string name;
  std::string anchor;
  double tolerance = 0.0;
  std::vector<double> residuals;
  double max_error = 0.0;
  bool passed = true;

  void record(double residual) {
    residuals.push_back(residual);
    max_error = std::max(max_error, residual);
    passed = passed && residual <= tolerance;
  }
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  int trials = 0;
  bool passed = true;
  std::vector<PropertyRecord> properties;

  /// Canonical JSON; byte-identical for identical (suite, trials, seed).
  /// Wall-clock timings are deliberately left out of the serialized form.
  std::string to_json() const;
  /// Columns: trial, property, residual, tolerance, passed.
  std::string to_csv() const;
};

/// Registered suites: ztransform, calculus, powers, fuglede_putnam,
/// commuting, tensor, localization, unbounded_oracle, all.
std::vector<std::string> suite_names();

/// Deterministic given (name, trials, seed); raises UnknownSuite.
VerificationReport run_verification_suite(const std::string& name, int trials,
                                          std::uint64_t seed);

}  // namespace opmod
