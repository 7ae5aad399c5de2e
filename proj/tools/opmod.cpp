// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "opmod/canonical_json.hpp"
#include "opmod/dsl.hpp"
#include "opmod/verify.hpp"

namespace {

int write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write " << path << "\n";
    return 2;
  }
  out << content;
  return 0;
}

int cmd_run(const std::string& file, const std::string& json_out) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    std::cerr << "cannot read " << file << "\n";
    return 2;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  const auto result = opmod::dsl::run_program(buf.str(), opmod::dsl::session_options_from_env());
  if (!result.error.empty()) std::cerr << result.error << "\n";
  if (!json_out.empty()) {
    const int rc = write_file(json_out, result.output);
    if (rc) return rc;
  } else {
    std::cout << result.output;
  }
  return result.exit_code;
}

int cmd_verify(const std::string& suite, int trials, std::uint64_t seed,
               const std::string& report_out, const std::string& csv_out) {
  try {
    const auto start = std::chrono::steady_clock::now();
    const auto report = opmod::run_verification_suite(suite, trials, seed);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    const std::string json = report.to_json();
    if (!report_out.empty()) {
      if (const int rc = write_file(report_out, json)) return rc;
    }
    if (!csv_out.empty()) {
      if (const int rc = write_file(csv_out, report.to_csv())) return rc;
    }
    std::cout << json << "\n";
    // Timings go to the human channel only; the JSON stays byte-stable.
    for (const auto& p : report.properties)
      std::cerr << (p.passed ? "  ok   " : "  FAIL ") << p.name << "  max_error=" << p.max_error
                << "  tol=" << p.tolerance << "\n";
    std::cerr << "suite '" << report.suite << "' finished in " << ms << " ms\n";
    return report.passed ? 0 : 1;
  } catch (const opmod::UnknownSuite& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}

int cmd_spectrum(const std::string& expr, const std::string& csv_out) {
  try {
    const auto value =
        opmod::dsl::eval_expression(expr, opmod::dsl::session_options_from_env());
    opmod::SpectrumSet spec;
    if (std::holds_alternative<opmod::SpectrumSet>(value)) {
      spec = std::get<opmod::SpectrumSet>(value);
    } else if (std::holds_alternative<opmod::RegularOp>(value)) {
      spec = opmod::spectrum(std::get<opmod::RegularOp>(value));
    } else if (std::holds_alternative<opmod::AdjointableOp>(value)) {
      spec = opmod::bounded_spectrum(std::get<opmod::AdjointableOp>(value));
    } else if (std::holds_alternative<std::complex<double>>(value)) {
      spec.points = {std::get<std::complex<double>>(value)};
    } else {
      std::cerr << "expression does not denote an operator\n";
      return 2;
    }
    std::cout << opmod::dsl::to_canonical_json(opmod::dsl::Value(spec)) << "\n";
    if (!csv_out.empty()) {
      std::string csv = "re,im\n";
      for (const auto& p : spec.points)
        csv += opmod::json::fmt_double(p.real()) + "," + opmod::json::fmt_double(p.imag()) + "\n";
      if (const int rc = write_file(csv_out, csv)) return rc;
    }
    return 0;
  } catch (const opmod::dsl::SyntaxError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const opmod::dsl::TypeError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const opmod::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operator calculus on Hilbert C*-modules"};
  app.require_subcommand(1);

  std::string file, json_out;
  auto* run = app.add_subcommand("run", "evaluate a program file");
  run->add_option("file", file, "program file")->required();
  run->add_option("--json", json_out, "write outputs to a file instead of stdout");

  std::string suite = "all", report_out, csv_out;
  int trials = 100;
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "suite name (or 'all')");
  verify->add_option("--trials", trials, "trials per property");
  verify->add_option("--seed", seed, "master seed");
  verify->add_option("--report", report_out, "write the JSON report here");
  verify->add_option("--csv", csv_out, "write per-trial residuals here");

  std::string expr, spec_csv;
  auto* spectrum = app.add_subcommand("spectrum", "print the spectrum of an expression");
  spectrum->add_option("--expr", expr, "operator expression")->required();
  spectrum->add_option("--csv", spec_csv, "write the points as CSV");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(file, json_out);
  if (verify->parsed()) return cmd_verify(suite, trials, seed, report_out, csv_out);
  if (spectrum->parsed()) return cmd_spectrum(expr, spec_csv);
  return 0;
}
