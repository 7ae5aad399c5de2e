// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "opmod/verify.hpp"
#include "opmod/errors.hpp"

using namespace opmod;

TEST_CASE("suite registry") {
  const auto names = suite_names();
  for (const char* expected :
       {"ztransform", "calculus", "powers", "fuglede_putnam", "commuting", "tensor",
        "localization", "unbounded_oracle", "all"})
    CHECK(std::find(names.begin(), names.end(), expected) != names.end());
  CHECK_THROWS_AS(run_verification_suite("bogus", 1, 1), UnknownSuite);
}

TEST_CASE("zero trials is vacuous and flagged") {
  const auto report = run_verification_suite("ztransform", 0, 9);
  CHECK(report.passed);
  for (const auto& p : report.properties) CHECK(p.residuals.empty());
  CHECK(report.to_json().find("\"note\":\"no trials\"") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs") {
  const auto a = run_verification_suite("ztransform", 10, 42);
  const auto b = run_verification_suite("ztransform", 10, 42);
  CHECK(a.to_json() == b.to_json());
  CHECK(a.to_csv() == b.to_csv());
  // Different seed, different residuals (overwhelmingly likely).
  const auto c = run_verification_suite("ztransform", 10, 43);
  CHECK(a.to_json() != c.to_json());
}

TEST_CASE("csv shape") {
  const auto report = run_verification_suite("powers", 3, 5);
  const std::string csv = report.to_csv();
  CHECK(csv.rfind("trial,property,residual,tolerance,passed\n", 0) == 0);
  size_t lines = 0;
  for (char ch : csv)
    if (ch == '\n') ++lines;
  size_t expected = 1;
  for (const auto& p : report.properties) expected += p.residuals.size();
  CHECK(lines == expected);
}

TEST_CASE("every suite passes a short run") {
  for (const char* name : {"ztransform", "calculus", "powers", "fuglede_putnam", "commuting",
                           "localization", "unbounded_oracle"}) {
    const auto report = run_verification_suite(name, 6, 2026);
    CHECK_MESSAGE(report.passed, name);
  }
  const auto tensor_report = run_verification_suite("tensor", 3, 2026);
  CHECK(tensor_report.passed);
}

TEST_CASE("the merged suite covers everything") {
  const auto report = run_verification_suite("all", 2, 1);
  CHECK(report.passed);
  bool saw_tensor = false, saw_oracle = false;
  for (const auto& p : report.properties) {
    saw_tensor = saw_tensor || p.name.rfind("tensor.", 0) == 0;
    saw_oracle = saw_oracle || p.name.rfind("unbounded_oracle.", 0) == 0;
    CHECK_FALSE(p.anchor.empty());
  }
  CHECK(saw_tensor);
  CHECK(saw_oracle);
}
