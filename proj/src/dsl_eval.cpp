// Copyright (c) 2026 the opmod authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <map>

#include "opmod/canonical_json.hpp"
#include "opmod/commuting.hpp"
#include "opmod/dsl.hpp"
#include "opmod/tensor.hpp"

namespace opmod::dsl {

namespace {

using C = std::complex<double>;

ScalarFunction resolve_fn(const FunctionRef& fn) {
  if (fn.name == "powk") return functions::powk(fn.param);
  return *functions::lookup(fn.name);
}

RegularOp as_regular(const Value& v) {
  if (std::holds_alternative<RegularOp>(v)) return std::get<RegularOp>(v);
  return RegularOp::from_bounded(std::get<AdjointableOp>(v));
}

AdjointableOp as_bounded(const Value& v) {
  if (std::holds_alternative<AdjointableOp>(v)) return std::get<AdjointableOp>(v);
  return std::get<RegularOp>(v).bounded();
}

bool operator_like(const Value& v) {
  return std::holds_alternative<AdjointableOp>(v) || std::holds_alternative<RegularOp>(v);
}

class Evaluator {
 public:
  explicit Evaluator(double tol) : tol_(tol) {}

  Value eval(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Literal: return e.literal;
      case Expr::Kind::Ident: return env_.at(e.ident);
      case Expr::Kind::Matrix: {
        Eigen::MatrixXcd m(e.rows.size(), e.rows[0].size());
        for (size_t i = 0; i < e.rows.size(); ++i)
          for (size_t j = 0; j < e.rows[i].size(); ++j) m(i, j) = e.rows[i][j];
        return AdjointableOp::from_complex_matrix(m);
      }
      case Expr::Kind::Sym:
        return RationalSymbol(Polynomial(e.sym_num), Polynomial(e.sym_den));
      case Expr::Kind::Call: return call(e);
    }
    throw Error("malformed expression");
  }

  void let(const std::string& name, Value v) { env_.insert_or_assign(name, std::move(v)); }

  /// Residual between two comparable values, in the norm of their kind.
  double compare(const Value& a, const Value& b) {
    if (std::holds_alternative<C>(a)) return std::abs(std::get<C>(a) - std::get<C>(b));
    if (std::holds_alternative<SpectrumSet>(a))
      return hausdorff_distance(std::get<SpectrumSet>(a), std::get<SpectrumSet>(b));
    if (std::holds_alternative<RationalSymbol>(a)) {
      const RationalSymbol d = std::get<RationalSymbol>(a) - std::get<RationalSymbol>(b);
      if (d.is_zero()) return 0.0;
      double m = 0.0;
      for (int n = 0; n <= 64; ++n) m = std::max(m, std::abs(d.eval(n)));
      return m;
    }
    return (as_bounded(a) - as_bounded(b)).norm();
  }

 private:
  Value call(const Expr& e) {
    const std::string& c = e.call;
    auto arg = [&](int i) { return eval(*e.args[i]); };

    if (c == "zt") return as_regular(arg(0));
    if (c == "unzt") return as_bounded(arg(0));
    if (c == "adj") {
      Value v = arg(0);
      if (std::holds_alternative<C>(v)) return std::conj(std::get<C>(v));
      if (std::holds_alternative<RationalSymbol>(v)) return std::get<RationalSymbol>(v).conj();
      if (std::holds_alternative<AdjointableOp>(v)) return std::get<AdjointableOp>(v).adjoint();
      return std::get<RegularOp>(v).adjoint();
    }
    if (c == "abs") {
      Value v = arg(0);
      if (std::holds_alternative<C>(v)) return C(std::abs(std::get<C>(v)));
      return absolute_value(as_regular(v));
    }
    if (c == "spec") {
      Value v = arg(0);
      if (std::holds_alternative<C>(v)) return SpectrumSet{{std::get<C>(v)}};
      // Plain matrices diagonalize directly; z-represented values go
      // through the inverse disc map.
      if (std::holds_alternative<AdjointableOp>(v))
        return bounded_spectrum(std::get<AdjointableOp>(v), tol_);
      return spectrum(std::get<RegularOp>(v), tol_);
    }
    if (c == "apply") {
      const CompatibleSet g = e.set_name ? *sets::lookup(*e.set_name) : sets::whole_plane();
      return apply_function(resolve_fn(*e.fn), as_regular(arg(0)), g, tol_);
    }
    if (c == "pow") {
      Value v = arg(0);
      if (e.scalar_arg.imag() != 0.0) throw Error("pow: exponent must be real");
      if (std::holds_alternative<C>(v)) return std::pow(std::get<C>(v), e.scalar_arg.real());
      return power_real(as_regular(v), e.scalar_arg.real(), tol_);
    }
    if (c == "cpow") {
      Value v = arg(0);
      if (std::holds_alternative<C>(v)) return std::exp(e.scalar_arg * std::log(std::get<C>(v)));
      return power_complex(as_regular(v), e.scalar_arg, tol_);
    }
    if (c == "exp") {
      Value v = arg(0);
      if (std::holds_alternative<C>(v)) return std::exp(std::get<C>(v));
      return exp_op(as_regular(v), tol_);
    }
    if (c == "log") {
      Value v = arg(0);
      if (std::holds_alternative<C>(v)) return std::log(std::get<C>(v));
      return ln_op(as_regular(v), tol_);
    }
    if (c == "inv") {
      Value v = arg(0);
      if (std::holds_alternative<C>(v)) return 1.0 / std::get<C>(v);
      if (std::holds_alternative<RationalSymbol>(v))
        return invert_symbol(std::get<RationalSymbol>(v));
      return invert(as_regular(v));
    }
    if (c == "res") return resolvent(as_regular(arg(0)), e.scalar_arg, tol_);
    if (c == "tensor") return tensor_op(as_regular(arg(0)), as_regular(arg(1)));
    if (c == "dot" || c == "dsum") {
      Value a = arg(0), b = arg(1);
      const bool product = c == "dot";
      if (std::holds_alternative<C>(a)) {
        const C x = std::get<C>(a), y = std::get<C>(b);
        return product ? x * y : x + y;
      }
      if (std::holds_alternative<RationalSymbol>(a)) {
        const auto &x = std::get<RationalSymbol>(a), &y = std::get<RationalSymbol>(b);
        return symbol_arith(x, y, product ? SymbolArith::mul : SymbolArith::add);
      }
      const CommutingPair pair = make_commuting_pair(as_regular(a), as_regular(b), tol_);
      return product ? dot_product(pair, tol_) : dot_sum(pair, tol_);
    }
    if (c == "joint") {
      // (f (x) 1)(S,T): f applied to the first operand through the joint
      // calculus, certifying commutation along the way.
      const ScalarFunction f = resolve_fn(*e.fn);
      const CommutingPair pair = make_commuting_pair(as_regular(arg(0)), as_regular(arg(1)), tol_);
      JointFunction h{f.name + "(x)1", [f](C s, C) { return f.eval(s); },
                      [f](C s, C) { return f.defined(s); }};
      return joint_calculus(h, pair, sets::whole_plane(), sets::whole_plane(), tol_);
    }
    if (c == "fp") {
      const ScalarFunction f = resolve_fn(*e.fn);
      const FpReport rep = fuglede_putnam_check(as_bounded(arg(0)), as_regular(arg(1)),
                                                as_regular(arg(2)), {f}, tol_);
      double r = rep.adjoint_residual;
      for (const auto& entry : rep.entries) r = std::max(r, entry.residual);
      return C(r);
    }
    throw Error("unknown call '" + c + "'");
  }

  std::map<std::string, Value> env_;
  double tol_;
};

std::string op_json(const AdjointableOp& op) {
  auto block_json = [](const Eigen::MatrixXcd& m) {
    std::string out = "[";
    for (int i = 0; i < m.rows(); ++i) {
      if (i) out += ",";
      out += "[";
      for (int j = 0; j < m.cols(); ++j) {
        if (j) out += ",";
        out += json::fmt_complex(m(i, j));
      }
      out += "]";
    }
    return out + "]";
  };
  if (op.blocks().size() == 1) return block_json(op.blocks()[0]);
  std::string out = "{\"blocks\":[";
  for (size_t k = 0; k < op.blocks().size(); ++k) {
    if (k) out += ",";
    out += block_json(op.blocks()[k]);
  }
  return out + "]}";
}

}  // namespace

std::string to_canonical_json(const Value& v) {
  if (std::holds_alternative<C>(v)) return json::fmt_complex(std::get<C>(v));
  if (std::holds_alternative<SpectrumSet>(v))
    return json::fmt_complex_list(std::get<SpectrumSet>(v).points);
  if (std::holds_alternative<RationalSymbol>(v)) return std::get<RationalSymbol>(v).to_json();
  if (std::holds_alternative<RegularOp>(v)) return op_json(std::get<RegularOp>(v).bounded());
  return op_json(std::get<AdjointableOp>(v));
}

SessionOptions session_options_from_env() {
  SessionOptions opts;
  if (const char* env = std::getenv("OPMOD_TOL")) {
    char* end = nullptr;
    const double t = std::strtod(env, &end);
    if (end != env && t > 0.0) opts.tol = t;
  }
  return opts;
}

SessionResult eval_session(const Program& p, const SessionOptions& opts) {
  SessionResult res;
  Evaluator ev(opts.tol);
  bool any_failed = false;
  for (const auto& s : p.statements) {
    try {
      switch (s.kind) {
        case Stmt::Kind::Let: ev.let(s.name, ev.eval(*s.a)); break;
        case Stmt::Kind::Print: res.output += to_canonical_json(ev.eval(*s.a)) + "\n"; break;
        case Stmt::Kind::Check: {
          const double residual = ev.compare(ev.eval(*s.a), ev.eval(*s.b));
          const double tol = s.has_tol ? s.tol : opts.tol;
          const bool passed = residual <= tol;
          any_failed = any_failed || !passed;
          res.output += "{\"check\":" + json::quote(s.name) +
                        ",\"passed\":" + (passed ? "true" : "false") + "}\n";
          break;
        }
      }
    } catch (const Error& err) {
      res.exit_code = 2;
      res.error = "evaluation error at " + std::to_string(s.pos.line) + ":" +
                  std::to_string(s.pos.col) + ": " + err.what();
      return res;
    }
  }
  res.exit_code = any_failed ? 1 : 0;
  return res;
}

SessionResult run_program(const std::string& text, const SessionOptions& opts) {
  Program p;
  try {
    p = parse_program(text);
  } catch (const Error& err) {
    SessionResult res;
    res.exit_code = 3;
    res.error = err.what();
    return res;
  }
  return eval_session(p, opts);
}

Value eval_expression(const std::string& text, const SessionOptions& opts) {
  const Program p = parse_program("print " + text + ";");
  Evaluator ev(opts.tol);
  return ev.eval(*p.statements.at(0).a);
}

}  // namespace opmod::dsl
