// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cctype>
#include <cstring>
#include <map>
#include <set>

#include "opmod/canonical_json.hpp"
#include "opmod/dsl.hpp"

namespace opmod::dsl {

namespace {

enum class Tok { Ident, Number, Imag, String, Punct, End };

struct Token {
  Tok kind = Tok::End;
  SourcePos pos;
  std::string text;
  double number = 0.0;
  char punct = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : s_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      if (i_ >= s_.size()) {
        out.push_back({Tok::End, pos(), "", 0, 0});
        return out;
      }
      const char c = s_[i_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        out.push_back(ident());
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        out.push_back(number());
      } else if (c == '"') {
        out.push_back(string_lit());
      } else if (std::strchr("=;~()[],+-", c)) {
        Token t{Tok::Punct, pos(), std::string(1, c), 0, c};
        advance();
        out.push_back(t);
      } else {
        throw SyntaxError(pos(), std::string("unexpected character '") + c + "'");
      }
    }
  }

 private:
  SourcePos pos() const { return {line_, col_}; }

  void advance() {
    if (i_ < s_.size() && s_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip_space() {
    for (;;) {
      while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) advance();
      if (i_ + 1 < s_.size() && s_[i_] == '/' && s_[i_ + 1] == '/') {
        while (i_ < s_.size() && s_[i_] != '\n') advance();
      } else if (i_ < s_.size() && s_[i_] == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  Token ident() {
    Token t{Tok::Ident, pos(), "", 0, 0};
    while (i_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
      t.text += s_[i_];
      advance();
    }
    return t;
  }

  Token number() {
    Token t{Tok::Number, pos(), "", 0, 0};
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      t.text += s_[i_];
      advance();
    }
    if (i_ < s_.size() && s_[i_] == '.') {
      t.text += '.';
      advance();
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        t.text += s_[i_];
        advance();
      }
    }
    if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
      size_t save = i_;
      int save_line = line_, save_col = col_;
      std::string suffix(1, s_[i_]);
      advance();
      if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) {
        suffix += s_[i_];
        advance();
      }
      if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
          suffix += s_[i_];
          advance();
        }
        t.text += suffix;
      } else {
        i_ = save;
        line_ = save_line;
        col_ = save_col;
      }
    }
    t.number = std::stod(t.text);
    // A number immediately followed by 'i' is an imaginary literal.
    if (i_ < s_.size() && s_[i_] == 'i' &&
        (i_ + 1 >= s_.size() || (!std::isalnum(static_cast<unsigned char>(s_[i_ + 1])) &&
                                 s_[i_ + 1] != '_'))) {
      advance();
      t.kind = Tok::Imag;
    }
    return t;
  }

  Token string_lit() {
    Token t{Tok::String, pos(), "", 0, 0};
    advance();  // opening quote
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\' && i_ + 1 < s_.size()) {
        advance();
        switch (s_[i_]) {
          case 'n': t.text += '\n'; break;
          case 't': t.text += '\t'; break;
          default: t.text += s_[i_];
        }
        advance();
      } else {
        t.text += s_[i_];
        advance();
      }
    }
    if (i_ >= s_.size()) throw SyntaxError(t.pos, "unterminated string");
    advance();  // closing quote
    return t;
  }

  const std::string& s_;
  size_t i_ = 0;
  int line_ = 1, col_ = 1;
};

const std::set<std::string> kUnaryCalls = {"zt", "unzt", "adj", "abs", "spec",
                                           "exp", "log", "inv"};
const std::set<std::string> kBinaryCalls = {"tensor", "dot", "dsum"};
const std::set<std::string> kScalarArgCalls = {"pow", "cpow", "res"};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program parse() {
    Program p;
    while (peek().kind != Tok::End) p.statements.push_back(statement());
    return p;
  }

 private:
  const Token& peek(int ahead = 0) const {
    const size_t j = std::min(i_ + ahead, toks_.size() - 1);
    return toks_[j];
  }
  Token next() { return toks_[std::min(i_++, toks_.size() - 1)]; }

  void expect_punct(char c, const std::string& what) {
    const Token t = next();
    if (t.kind != Tok::Punct || t.punct != c)
      throw SyntaxError(t.pos, "expected '" + std::string(1, c) + "' " + what);
  }

  bool at_punct(char c) const { return peek().kind == Tok::Punct && peek().punct == c; }

  Stmt statement() {
    const Token t = next();
    if (t.kind != Tok::Ident) throw SyntaxError(t.pos, "expected a statement");
    Stmt s;
    s.pos = t.pos;
    if (t.text == "let") {
      s.kind = Stmt::Kind::Let;
      const Token name = next();
      if (name.kind != Tok::Ident) throw SyntaxError(name.pos, "expected identifier after 'let'");
      s.name = name.text;
      expect_punct('=', "after let identifier");
      s.a = expression();
      expect_punct(';', "to end the statement");
      return s;
    }
    if (t.text == "check") {
      s.kind = Stmt::Kind::Check;
      const Token label = next();
      if (label.kind != Tok::String) throw SyntaxError(label.pos, "expected a check label string");
      s.name = label.text;
      s.a = expression();
      expect_punct('~', "between the compared expressions");
      s.b = expression();
      if (peek().kind == Tok::Ident && peek().text == "tol") {
        next();
        s.has_tol = true;
        s.tol = signed_number();
      }
      expect_punct(';', "to end the statement");
      return s;
    }
    if (t.text == "print") {
      s.kind = Stmt::Kind::Print;
      s.a = expression();
      expect_punct(';', "to end the statement");
      return s;
    }
    throw SyntaxError(t.pos, "unknown statement '" + t.text + "'");
  }

  double signed_number() {
    double sign = 1.0;
    if (at_punct('-')) {
      next();
      sign = -1.0;
    }
    const Token t = next();
    if (t.kind != Tok::Number) throw SyntaxError(t.pos, "expected a number");
    return sign * t.number;
  }

  std::complex<double> complex_literal() {
    const SourcePos p = peek().pos;
    double sign = 1.0;
    if (at_punct('-')) {
      next();
      sign = -1.0;
    }
    const Token t = next();
    if (t.kind == Tok::Imag) return {0.0, sign * t.number};
    if (t.kind != Tok::Number) throw SyntaxError(p, "expected a complex literal");
    const double re = sign * t.number;
    if (at_punct('+') || at_punct('-')) {
      // Only a following imaginary part extends the literal.
      if (peek(1).kind == Tok::Imag) {
        const double s2 = next().punct == '+' ? 1.0 : -1.0;
        const Token im = next();
        return {re, s2 * im.number};
      }
    }
    return {re, 0.0};
  }

  FunctionRef function_ref() {
    const Token t = next();
    if (t.kind != Tok::Ident) throw SyntaxError(t.pos, "expected a function name");
    FunctionRef fn;
    fn.name = t.text;
    if (at_punct('(')) {
      next();
      fn.has_param = true;
      fn.param = signed_number();
      expect_punct(')', "after the function parameter");
    }
    const bool known = fn.name == "powk" ? fn.has_param
                                         : (!fn.has_param && functions::lookup(fn.name).has_value());
    if (!known)
      throw TypeError(t.pos, "unknown function '" + fn.name + "' (registry: id, conj, sq, sqrt, "
                             "exp, log, recip, zmap, powk(s))");
    return fn;
  }

  std::vector<std::complex<double>> complex_list(char closer) {
    std::vector<std::complex<double>> out;
    if (at_punct(closer)) return out;
    out.push_back(complex_literal());
    while (at_punct(',')) {
      next();
      out.push_back(complex_literal());
    }
    return out;
  }

  ExprPtr expression() {
    const Token& t = peek();
    if (t.kind == Tok::Number || t.kind == Tok::Imag ||
        (t.kind == Tok::Punct && t.punct == '-')) {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Literal;
      e->pos = t.pos;
      e->literal = complex_literal();
      return e;
    }
    if (t.kind != Tok::Ident) throw SyntaxError(t.pos, "expected an expression");
    if (peek(1).kind == Tok::Punct && peek(1).punct == '(') return call();
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Ident;
    e->pos = t.pos;
    e->ident = next().text;
    return e;
  }

  ExprPtr call() {
    const Token name = next();
    auto e = std::make_shared<Expr>();
    e->pos = name.pos;
    e->call = name.text;
    e->kind = Expr::Kind::Call;
    expect_punct('(', "to open the argument list");

    if (name.text == "mat") {
      e->kind = Expr::Kind::Matrix;
      expect_punct('[', "to open the matrix literal");
      for (;;) {
        expect_punct('[', "to open a matrix row");
        e->rows.push_back(complex_list(']'));
        expect_punct(']', "to close the row");
        if (at_punct(',')) {
          next();
          continue;
        }
        break;
      }
      expect_punct(']', "to close the matrix literal");
      expect_punct(')', "to close mat(...)");
      if (e->rows.empty() || e->rows[0].empty())
        throw SyntaxError(e->pos, "matrix literal must be non-empty");
      for (const auto& r : e->rows)
        if (r.size() != e->rows[0].size())
          throw SyntaxError(e->pos, "matrix rows must have equal length");
      return e;
    }

    if (name.text == "sym") {
      e->kind = Expr::Kind::Sym;
      expect_punct('[', "to open the numerator coefficients");
      e->sym_num = complex_list(']');
      expect_punct(']', "to close the numerator");
      const Token sep = next();
      if (sep.kind != Tok::Punct || sep.punct != ';')
        throw SyntaxError(sep.pos, "expected ';' between numerator and denominator");
      expect_punct('[', "to open the denominator coefficients");
      e->sym_den = complex_list(']');
      expect_punct(']', "to close the denominator");
      expect_punct(')', "to close sym(...)");
      if (e->sym_den.empty()) throw SyntaxError(e->pos, "denominator must be non-empty");
      return e;
    }

    if (kUnaryCalls.count(name.text)) {
      e->args.push_back(expression());
      expect_punct(')', "to close the call");
      return e;
    }
    if (kBinaryCalls.count(name.text)) {
      e->args.push_back(expression());
      expect_punct(',', "between the arguments");
      e->args.push_back(expression());
      expect_punct(')', "to close the call");
      return e;
    }
    if (kScalarArgCalls.count(name.text)) {
      e->args.push_back(expression());
      expect_punct(',', "between the arguments");
      e->scalar_arg = complex_literal();
      e->has_scalar_arg = true;
      expect_punct(')', "to close the call");
      return e;
    }
    if (name.text == "apply") {
      e->fn = function_ref();
      expect_punct(',', "after the function name");
      e->args.push_back(expression());
      if (at_punct(',')) {
        next();
        const Token setname = next();
        if (setname.kind != Tok::Ident) throw SyntaxError(setname.pos, "expected a set name");
        if (!sets::lookup(setname.text))
          throw TypeError(setname.pos, "unknown set '" + setname.text +
                                           "' (sets: all, nonzero, real, pos, spos)");
        e->set_name = setname.text;
      }
      expect_punct(')', "to close apply(...)");
      return e;
    }
    if (name.text == "joint") {
      e->fn = function_ref();
      expect_punct(',', "after the function name");
      e->args.push_back(expression());
      expect_punct(',', "between the operands");
      e->args.push_back(expression());
      expect_punct(')', "to close joint(...)");
      return e;
    }
    if (name.text == "fp") {
      e->args.push_back(expression());
      expect_punct(',', "between the arguments");
      e->args.push_back(expression());
      expect_punct(',', "between the arguments");
      e->args.push_back(expression());
      expect_punct(',', "before the function name");
      e->fn = function_ref();
      expect_punct(')', "to close fp(...)");
      return e;
    }
    throw SyntaxError(name.pos, "unknown call '" + name.text + "'");
  }

  std::vector<Token> toks_;
  size_t i_ = 0;
};

enum class VType { Complex, Op, Reg, Sym, Spec };

const char* vtype_name(VType t) {
  switch (t) {
    case VType::Complex: return "scalar";
    case VType::Op: return "operator";
    case VType::Reg: return "regular operator";
    case VType::Sym: return "symbol";
    case VType::Spec: return "spectrum";
  }
  return "?";
}

bool operator_like(VType t) { return t == VType::Op || t == VType::Reg; }

VType infer(const Expr& e, const std::map<std::string, VType>& env);

VType infer_call(const Expr& e, const std::map<std::string, VType>& env) {
  auto arg = [&](int i) { return infer(*e.args[i], env); };
  const std::string& c = e.call;
  auto fail = [&](const std::string& msg) -> VType { throw TypeError(e.pos, msg); };

  if (c == "zt") return operator_like(arg(0)) ? VType::Reg : fail("zt needs an operator");
  if (c == "unzt") return operator_like(arg(0)) ? VType::Op : fail("unzt needs an operator");
  if (c == "adj") return arg(0) == VType::Spec ? fail("adj of a spectrum") : arg(0);
  if (c == "abs") {
    const VType a = arg(0);
    if (operator_like(a)) return VType::Reg;
    if (a == VType::Complex) return VType::Complex;
    return fail("abs needs an operator or scalar");
  }
  if (c == "spec") {
    const VType a = arg(0);
    if (operator_like(a) || a == VType::Complex) return VType::Spec;
    return fail("spec needs an operator or scalar");
  }
  if (c == "apply") return operator_like(arg(0)) ? VType::Reg : fail("apply needs an operator");
  if (c == "pow" || c == "cpow" || c == "exp" || c == "log") {
    const VType a = arg(0);
    if (operator_like(a)) return VType::Reg;
    if (a == VType::Complex) return VType::Complex;
    return fail(c + " needs an operator or scalar");
  }
  if (c == "inv") {
    const VType a = arg(0);
    if (operator_like(a)) return VType::Reg;
    if (a == VType::Sym || a == VType::Complex) return a;
    return fail("inv needs an operator, symbol or scalar");
  }
  if (c == "res") return operator_like(arg(0)) ? VType::Op : fail("res needs an operator");
  if (c == "tensor") {
    if (operator_like(arg(0)) && operator_like(arg(1))) return VType::Reg;
    return fail("tensor needs two operators");
  }
  if (c == "dot" || c == "dsum") {
    const VType a = arg(0), b = arg(1);
    if (a == VType::Sym && b == VType::Sym) return VType::Sym;
    if (operator_like(a) && operator_like(b)) return VType::Reg;
    if (a == VType::Complex && b == VType::Complex) return VType::Complex;
    return fail(c + " needs two operators, two symbols or two scalars");
  }
  if (c == "joint") {
    if (operator_like(arg(0)) && operator_like(arg(1))) return VType::Reg;
    return fail("joint needs two operators");
  }
  if (c == "fp") {
    if (operator_like(arg(0)) && operator_like(arg(1)) && operator_like(arg(2)))
      return VType::Complex;
    return fail("fp needs three operators");
  }
  return fail("unknown call '" + c + "'");
}

VType infer(const Expr& e, const std::map<std::string, VType>& env) {
  switch (e.kind) {
    case Expr::Kind::Literal: return VType::Complex;
    case Expr::Kind::Matrix: return VType::Op;
    case Expr::Kind::Sym: return VType::Sym;
    case Expr::Kind::Ident: {
      auto it = env.find(e.ident);
      if (it == env.end()) throw TypeError(e.pos, "unbound identifier '" + e.ident + "'");
      return it->second;
    }
    case Expr::Kind::Call: return infer_call(e, env);
  }
  throw TypeError(e.pos, "malformed expression");
}

bool comparable(VType a, VType b) {
  if (operator_like(a) && operator_like(b)) return true;
  return a == b;
}

void bind_check(const Program& p) {
  std::map<std::string, VType> env;
  for (const auto& s : p.statements) {
    switch (s.kind) {
      case Stmt::Kind::Let: env[s.name] = infer(*s.a, env); break;
      case Stmt::Kind::Print: infer(*s.a, env); break;
      case Stmt::Kind::Check: {
        const VType a = infer(*s.a, env), b = infer(*s.b, env);
        if (!comparable(a, b))
          throw TypeError(s.pos, std::string("cannot compare ") + vtype_name(a) + " with " +
                                     vtype_name(b));
        break;
      }
    }
  }
}

std::string complex_source(std::complex<double> c) {
  const double re = c.real(), im = c.imag();
  if (im == 0.0) return json::fmt_double(re);
  std::string imag = json::fmt_double(std::abs(im)) + "i";
  if (re == 0.0) return (im < 0 ? "-" : "") + imag;
  return json::fmt_double(re) + (im < 0 ? "-" : "+") + imag;
}

std::string expr_source(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Literal: return complex_source(e.literal);
    case Expr::Kind::Ident: return e.ident;
    case Expr::Kind::Matrix: {
      std::string out = "mat([";
      for (size_t r = 0; r < e.rows.size(); ++r) {
        if (r) out += ",";
        out += "[";
        for (size_t j = 0; j < e.rows[r].size(); ++j) {
          if (j) out += ",";
          out += complex_source(e.rows[r][j]);
        }
        out += "]";
      }
      return out + "])";
    }
    case Expr::Kind::Sym: {
      auto list = [](const std::vector<std::complex<double>>& v) {
        std::string out = "[";
        for (size_t i = 0; i < v.size(); ++i) {
          if (i) out += ",";
          out += complex_source(v[i]);
        }
        return out + "]";
      };
      return "sym(" + list(e.sym_num) + ";" + list(e.sym_den) + ")";
    }
    case Expr::Kind::Call: {
      std::string out = e.call + "(";
      bool first = true;
      auto add = [&](const std::string& piece) {
        if (!first) out += ",";
        out += piece;
        first = false;
      };
      if (e.call == "fp") {
        for (const auto& a : e.args) add(expr_source(*a));
        add(e.fn->name + (e.fn->has_param ? "(" + json::fmt_double(e.fn->param) + ")" : ""));
      } else {
        if (e.fn)
          add(e.fn->name + (e.fn->has_param ? "(" + json::fmt_double(e.fn->param) + ")" : ""));
        for (const auto& a : e.args) add(expr_source(*a));
        if (e.has_scalar_arg) add(complex_source(e.scalar_arg));
        if (e.set_name) add(*e.set_name);
      }
      return out + ")";
    }
  }
  return "";
}

}  // namespace

bool equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.literal != b.literal || a.ident != b.ident || a.call != b.call ||
      a.fn != b.fn || a.set_name != b.set_name || a.has_scalar_arg != b.has_scalar_arg ||
      a.scalar_arg != b.scalar_arg || a.rows != b.rows || a.sym_num != b.sym_num ||
      a.sym_den != b.sym_den || a.args.size() != b.args.size())
    return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!equal(*a.args[i], *b.args[i])) return false;
  return true;
}

bool equal(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind || a.name != b.name || a.has_tol != b.has_tol || a.tol != b.tol)
    return false;
  if ((a.a == nullptr) != (b.a == nullptr) || (a.b == nullptr) != (b.b == nullptr)) return false;
  if (a.a && !equal(*a.a, *b.a)) return false;
  if (a.b && !equal(*a.b, *b.b)) return false;
  return true;
}

bool equal(const Program& a, const Program& b) {
  if (a.statements.size() != b.statements.size()) return false;
  for (size_t i = 0; i < a.statements.size(); ++i)
    if (!equal(a.statements[i], b.statements[i])) return false;
  return true;
}

Program parse_program(const std::string& text) {
  Lexer lex(text);
  Parser parser(lex.run());
  Program p = parser.parse();
  bind_check(p);
  return p;
}

std::string to_source(const Program& p) {
  std::string out;
  for (const auto& s : p.statements) {
    switch (s.kind) {
      case Stmt::Kind::Let: out += "let " + s.name + " = " + expr_source(*s.a) + ";\n"; break;
      case Stmt::Kind::Print: out += "print " + expr_source(*s.a) + ";\n"; break;
      case Stmt::Kind::Check:
        out += "check \"" + s.name + "\" " + expr_source(*s.a) + " ~ " + expr_source(*s.b);
        if (s.has_tol) out += " tol " + json::fmt_double(s.tol);
        out += ";\n";
        break;
    }
  }
  return out;
}

}  // namespace opmod::dsl
