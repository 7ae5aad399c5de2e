// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace opmod {

/// A pointwise scalar map together with an explicit domain predicate.
/// Definedness is only ever queried at spectral points, which are finite
/// sets here, so the predicate fully decides applicability.
struct ScalarFunction {
  std::string name;
  std::function<std::complex<double>(std::complex<double>)> eval;
  std::function<bool(std::complex<double>)> defined = [](std::complex<double>) { return true; };
};

namespace functions {

using C = std::complex<double>;

inline ScalarFunction id() {
  return {"id", [](C c) { return c; }};
}

inline ScalarFunction conj() {
  return {"conj", [](C c) { return std::conj(c); }};
}

inline ScalarFunction sq() {
  return {"sq", [](C c) { return c * c; }};
}

inline ScalarFunction sqrt() {
  return {"sqrt", [](C c) { return std::sqrt(c); }};
}

inline ScalarFunction exp() {
  return {"exp", [](C c) { return std::exp(c); }};
}

/// Principal branch; excludes 0.
inline ScalarFunction log() {
  return {"log", [](C c) { return std::log(c); }, [](C c) { return std::abs(c) > 0.0; }};
}

inline ScalarFunction recip() {
  return {"recip", [](C c) { return 1.0 / c; }, [](C c) { return std::abs(c) > 0.0; }};
}

/// c / (1+|c|^2)^{1/2}, the homeomorphism of the plane onto the open disc.
inline C zmap_point(C c) { return c / std::sqrt(1.0 + std::norm(c)); }

/// Its inverse c / (1-|c|^2)^{1/2} on the open disc.
inline C zmap_inverse_point(C c) { return c / std::sqrt(1.0 - std::norm(c)); }

/// Radial clamp to |c|^2 <= 1 - floor. Eigenvalue clustering can push a
/// computed disc eigenvalue marginally past the circle even though the
/// defect floor held at construction; spectral reads saturate there
/// instead of dying.
inline C clamp_to_open_disc(C c, double floor_gap) {
  const double n2 = std::norm(c);
  const double cap = 1.0 - floor_gap;
  return n2 > cap ? c * std::sqrt(cap / n2) : c;
}

inline ScalarFunction zmap() {
  return {"zmap", [](C c) { return zmap_point(c); }};
}

/// t^s through the principal branch; 0^0 = 1, 0^s = 0 for s > 0.
inline ScalarFunction powk(double s) {
  return {"powk(" + std::to_string(s) + ")",
          [s](C c) -> C {
            if (std::abs(c) == 0.0) return s == 0.0 ? C(1.0) : C(0.0);
            return std::exp(s * std::log(c));
          },
          [s](C c) { return s >= 0.0 || std::abs(c) > 0.0; }};
}

/// Fixed registry the DSL resolves FNAME against.
std::optional<ScalarFunction> lookup(const std::string& name);
std::vector<std::string> registry_names();

}  // namespace functions
}  // namespace opmod
