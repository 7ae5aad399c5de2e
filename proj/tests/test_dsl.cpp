// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "opmod/dsl.hpp"

using namespace opmod;
using dsl::Program;
using dsl::SessionResult;

TEST_CASE("parse basics") {
  const Program p = dsl::parse_program("let t = mat([[1,0],[0,2]]); print spec(t);");
  REQUIRE(p.statements.size() == 2);
  CHECK(p.statements[0].kind == dsl::Stmt::Kind::Let);
  CHECK(p.statements[0].name == "t");
  CHECK(p.statements[1].kind == dsl::Stmt::Kind::Print);

  CHECK_NOTHROW(dsl::parse_program("let z = zt(mat([[1]]));"));
}

TEST_CASE("syntax errors carry positions") {
  try {
    dsl::parse_program("let = ;");
    FAIL("expected a syntax error");
  } catch (const dsl::SyntaxError& e) {
    CHECK(e.pos.line == 1);
    CHECK(e.pos.col == 5);
  }
  CHECK_THROWS_AS(dsl::parse_program("print mat([[1,2],[3]]);"), dsl::SyntaxError);
  CHECK_THROWS_AS(dsl::parse_program("frobnicate x;"), dsl::SyntaxError);
  CHECK_THROWS_AS(dsl::parse_program("print apply(nope, mat([[1]]));"), dsl::TypeError);
  CHECK_THROWS_AS(dsl::parse_program("print apply(exp, mat([[1]]), badset);"), dsl::TypeError);
}

TEST_CASE("binding and typing errors") {
  CHECK_THROWS_AS(dsl::parse_program("print unknown_name;"), dsl::TypeError);
  CHECK_THROWS_AS(dsl::parse_program("print dot(sym([1];[1]), mat([[1]]));"), dsl::TypeError);
  CHECK_THROWS_AS(dsl::parse_program("check \"x\" spec(mat([[1]])) ~ 1;"), dsl::TypeError);
  CHECK_THROWS_AS(dsl::parse_program("print abs(sym([1];[1]));"), dsl::TypeError);
  // Bindings are ordered: use after definition only.
  CHECK_NOTHROW(dsl::parse_program("let a = 1; let b = a;"));
}

TEST_CASE("complex literals") {
  const Program p = dsl::parse_program("let a = 2+3i; let b = -3i; let c = 1-1i; let d = -2;");
  CHECK(p.statements[0].a->literal == std::complex<double>(2, 3));
  CHECK(p.statements[1].a->literal == std::complex<double>(0, -3));
  CHECK(p.statements[2].a->literal == std::complex<double>(1, -1));
  CHECK(p.statements[3].a->literal == std::complex<double>(-2, 0));
}

TEST_CASE("round trip through to_source") {
  const std::vector<std::string> corpus = {
      "let t = mat([[1,0],[0,2]]);\nprint spec(t);\n",
      "let s = sym([0,1i];[1,1]);\nprint adj(s);\n",
      "check \"rt\" unzt(zt(mat([[0,1],[1,0]]))) ~ mat([[0,1],[1,0]]) tol 1e-09;\n",
      "let u = cpow(mat([[2,0],[0,3]]), 1i);\nprint dot(adj(u), u);\n",
      "print apply(powk(0.5), mat([[4,0],[0,9]]), pos);\n",
      "print fp(mat([[1,0],[0,1]]), mat([[1,0],[0,2]]), mat([[1,0],[0,2]]), exp);\n",
  };
  for (const auto& text : corpus) {
    const Program p1 = dsl::parse_program(text);
    const std::string src = dsl::to_source(p1);
    const Program p2 = dsl::parse_program(src);
    CHECK(dsl::equal(p1, p2));
    // And printing is a fixed point from then on.
    CHECK(dsl::to_source(p2) == src);
  }
}

TEST_CASE("session evaluation and exit codes") {
  {
    const SessionResult r = dsl::run_program(
        "let t = mat([[0,1],[1,0]]); check \"zt-roundtrip\" unzt(zt(t)) ~ t;");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "{\"check\":\"zt-roundtrip\",\"passed\":true}\n");
  }
  {
    const SessionResult r =
        dsl::run_program("check \"fail\" mat([[1]]) ~ mat([[2]]) tol 0.5;");
    CHECK(r.exit_code == 1);
    CHECK(r.output == "{\"check\":\"fail\",\"passed\":false}\n");
  }
  {
    const SessionResult r = dsl::run_program("print apply(log, mat([[0]]));");
    CHECK(r.exit_code == 2);
    CHECK(r.error.find("evaluation error") != std::string::npos);
  }
  {
    const SessionResult r = dsl::run_program("let = ;");
    CHECK(r.exit_code == 3);
  }
}

TEST_CASE("canonical print forms") {
  {
    const SessionResult r = dsl::run_program("print spec(mat([[1,0],[0,2]]));");
    CHECK(r.output == "[[1,0],[2,0]]\n");
  }
  {
    const SessionResult r = dsl::run_program("print mat([[1,2i],[0,3]]);");
    CHECK(r.output == "[[[1,0],[0,2]],[[0,0],[3,0]]]\n");
  }
  {
    const SessionResult r = dsl::run_program("print sym([0,1];[1,1]);");
    CHECK(r.output == "{\"num\":[[0,0],[1,0]],\"den\":[[1,0],[1,0]]}\n");
  }
  {
    const SessionResult r = dsl::run_program("print 1-2i;");
    CHECK(r.output == "[1,-2]\n");
  }
}

TEST_CASE("evaluation semantics") {
  // apply(recip, ., nonzero) matches inv on an invertible operator.
  const SessionResult r = dsl::run_program(
      "let t = mat([[1,0],[0,2]]);"
      "check \"recip\" apply(recip, t, nonzero) ~ inv(t);"
      "check \"sqrt\" pow(mat([[4,0],[0,9]]), 0.5) ~ mat([[2,0],[0,3]]);"
      "check \"tensor\" unzt(tensor(t, mat([[3]]))) ~ mat([[3,0],[0,6]]);"
      "check \"joint\" joint(sq, t, t) ~ apply(sq, t);"
      "check \"dsum\" dsum(t, mat([[10,0],[0,20]])) ~ mat([[11,0],[0,22]]);"
      "check \"res\" res(t, 3) ~ mat([[-0.5,0],[0,-1]]);"
      "check \"symprod\" dot(sym([0,1];[1]), sym([0,1];[1])) ~ sym([0,0,1];[1]);");
  CHECK(r.error == "");
  CHECK(r.exit_code == 0);
}

TEST_CASE("fp in the DSL yields the residual scalar") {
  const SessionResult r = dsl::run_program(
      "let s = mat([[1,0],[0,2i]]);"
      "check \"fp\" fp(mat([[1,0],[0,1]]), s, s, exp) ~ 0 tol 1e-09;");
  CHECK(r.exit_code == 0);
}

TEST_CASE("determinism of outputs") {
  const std::string prog = "print spec(mat([[0,-1],[1,0]])); print exp(0.5);";
  const SessionResult a = dsl::run_program(prog);
  const SessionResult b = dsl::run_program(prog);
  CHECK(a.output == b.output);
  CHECK(a.exit_code == 0);
}

TEST_CASE("mangled inputs fail cleanly with positions") {
  // Truncations and mutations of valid programs must land in SyntaxError
  // or TypeError, never anywhere else.
  const std::string base =
      "let t = mat([[1,0],[0,2]]); check \"x\" apply(exp, t) ~ t tol 0.5; print spec(t);";
  for (size_t cut = 0; cut < base.size(); cut += 3) {
    const std::string text = base.substr(0, cut);
    try {
      dsl::parse_program(text);
    } catch (const dsl::SyntaxError&) {
    } catch (const dsl::TypeError&) {
    }
  }
  for (char junk : {'@', '$', '%', '\\', '{'}) {
    std::string text = base;
    text[7] = junk;
    CHECK_THROWS_AS(dsl::parse_program(text), Error);
  }
}

TEST_CASE("tol option from environment") {
  const dsl::SessionOptions base = dsl::session_options_from_env();
  CHECK(base.tol == kDefaultTol);
  setenv("OPMOD_TOL", "0.125", 1);
  CHECK(dsl::session_options_from_env().tol == 0.125);
  unsetenv("OPMOD_TOL");
}
