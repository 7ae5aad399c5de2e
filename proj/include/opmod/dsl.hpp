// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>
#include <variant>

#include "opmod/calculus.hpp"
#include "opmod/unbounded.hpp"

namespace opmod::dsl {

struct SourcePos {
  int line = 1;
  int col = 1;
};

/// Raised on malformed input; maps to exit status 3.
class SyntaxError : public Error {
 public:
  SyntaxError(SourcePos p, const std::string& msg)
      : Error("syntax error at " + std::to_string(p.line) + ":" + std::to_string(p.col) + ": " +
              msg),
        pos(p) {}
  SourcePos pos;
};

/// Raised when identifier binding or static expression typing fails; also
/// maps to exit status 3 (the program never starts executing).
class TypeError : public Error {
 public:
  TypeError(SourcePos p, const std::string& msg)
      : Error("type error at " + std::to_string(p.line) + ":" + std::to_string(p.col) + ": " +
              msg),
        pos(p) {}
  SourcePos pos;
};

/// Registry function reference, e.g. exp or powk(0.5).
struct FunctionRef {
  std::string name;
  bool has_param = false;
  double param = 0.0;
  bool operator==(const FunctionRef&) const = default;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Literal, Ident, Call, Matrix, Sym };
  Kind kind = Kind::Literal;
  SourcePos pos;

  std::complex<double> literal{};
  std::string ident;
  std::string call;
  std::vector<ExprPtr> args;
  std::optional<FunctionRef> fn;
  std::optional<std::string> set_name;
  std::complex<double> scalar_arg{};
  bool has_scalar_arg = false;
  std::vector<std::vector<std::complex<double>>> rows;
  std::vector<std::complex<double>> sym_num, sym_den;
};

bool equal(const Expr& a, const Expr& b);

struct Stmt {
  enum class Kind { Let, Check, Print };
  Kind kind = Kind::Print;
  SourcePos pos;
  std::string name;  // let target / check label
  ExprPtr a, b;
  bool has_tol = false;
  double tol = 0.0;
};

bool equal(const Stmt& a, const Stmt& b);

struct Program {
  std::vector<Stmt> statements;
};

bool equal(const Program& a, const Program& b);

/// Parses and then binds: identifiers must be defined before use, function
/// and set names must resolve, and expression types must be consistent.
Program parse_program(const std::string& text);

/// Source form that reparses to an equal Program.
std::string to_source(const Program& p);

using Value =
    std::variant<std::complex<double>, AdjointableOp, RegularOp, RationalSymbol, SpectrumSet>;

std::string to_canonical_json(const Value& v);

struct SessionOptions {
  /// Default check/classification tolerance; OPMOD_TOL wins when set.
  double tol = kDefaultTol;
};

SessionOptions session_options_from_env();

// Exit status contract: 0 all checks pass, 1 a check failed,
// 2 evaluation error, 3 parse/bind error.
struct SessionResult {
  std::string output;
  int exit_code = 0;
  std::string error;
};

SessionResult eval_session(const Program& p, const SessionOptions& opts = {});

/// parse + eval with the exit contract applied, including status 3.
SessionResult run_program(const std::string& text, const SessionOptions& opts = {});

/// Evaluates a single expression (used by `opmod spectrum --expr`).
Value eval_expression(const std::string& text, const SessionOptions& opts = {});

}  // namespace opmod::dsl
