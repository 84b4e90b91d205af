#pragma once

// Abstract and concrete syntax of quantitative predicates.
//
// Surface syntax:
//
//   expr    := quant | chain
//   quant   := ("E" | "A") "^" p "(" var "in" space ")" "." expr
//   chain   := unary [op unary]*      one operator per chain, left nested;
//                                     "-o" takes exactly two operands
//   unary   := k "." unary | postfix
//   postfix := primary ["^*"]*
//   primary := "(" expr ")" | constant | number | atom
//   atom    := name | name "(" var ["," var]* ")"
//
//   op       \/  /\  (+)  (+*)  (x)  (x*)
//   constant false true zero one top bot
//   number   decimal literal, inf, -inf (a constant of the ambient carrier)
//
// "(x)" directly after an identifier is an argument list, not the tensor.
// Formulas are compared structurally; there is no rewriting.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qpl/env.hpp"
#include "qpl/error.hpp"
#include "qpl/extreal.hpp"
#include "qpl/quantmean.hpp"

namespace qpl {

enum class NamedConst { false_, true_, zero, one, top, bot };

constexpr std::string_view to_string(NamedConst c) {
  switch (c) {
    case NamedConst::false_: return "false";
    case NamedConst::true_: return "true";
    case NamedConst::zero: return "zero";
    case NamedConst::one: return "one";
    case NamedConst::top: return "top";
    case NamedConst::bot: return "bot";
  }
  return "?";
}

inline std::optional<NamedConst> named_const_from(std::string_view s) {
  for (auto c : {NamedConst::false_, NamedConst::true_, NamedConst::zero, NamedConst::one, NamedConst::top,
                 NamedConst::bot}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

/// Multiplicative value of a named constant; the additive value is its napier image.
inline double named_const_value(NamedConst c, Carrier carrier) {
  double m = 0.0;
  switch (c) {
    case NamedConst::false_:
    case NamedConst::zero: m = 0.0; break;
    case NamedConst::true_:
    case NamedConst::top: m = kInf; break;
    case NamedConst::one:
    case NamedConst::bot: m = 1.0; break;
  }
  return carrier == Carrier::mul ? m : detail::napier(m);
}

class Formula;

namespace ast {

struct Const {
  std::optional<NamedConst> name;  // empty for numeric literals
  double literal = 0.0;
};
struct Atom {
  std::string name;
  std::vector<std::string> args;
};
struct BinOp;
struct Div;
struct Dual;
struct Scalar;
struct Quant;

}  // namespace ast

/// Immutable formula tree with shared subterms.
class Formula {
 public:
  using Node = std::variant<ast::Const, ast::Atom, ast::BinOp, ast::Div, ast::Dual, ast::Scalar, ast::Quant>;

  Formula() = default;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  const Node& node() const;
  explicit operator bool() const;

  template <class T>
  const T* as() const {
    return std::get_if<T>(node_.get());
  }

 private:
  std::shared_ptr<const Node> node_;
};

namespace ast {

struct BinOp {
  OpCode op;
  Formula lhs, rhs;
};
struct Div {
  Formula lhs, rhs;
};
struct Dual {
  Formula inner;
};
struct Scalar {
  double k;
  Formula inner;
};
struct Quant {
  Polarity polarity;
  double p;
  std::string var;
  std::string space;
  Formula body;
};

}  // namespace ast

inline const Formula::Node& Formula::node() const { return *node_; }
inline Formula::operator bool() const { return node_ != nullptr; }

// ---------------------------------------------------------------------------
// Builders.

namespace fm {

template <class T>
Formula make(T node) {
  return Formula(std::make_shared<const Formula::Node>(std::move(node)));
}

inline Formula constant(NamedConst c) { return make(ast::Const{c, 0.0}); }
inline Formula literal(double v) {
  if (std::isnan(v)) throw Error(ErrorCode::InvalidValue, "NaN literal");
  return make(ast::Const{std::nullopt, v});
}
inline Formula atom(std::string name, std::vector<std::string> args) {
  return make(ast::Atom{std::move(name), std::move(args)});
}
inline Formula binop(OpCode op, Formula l, Formula r) { return make(ast::BinOp{op, std::move(l), std::move(r)}); }
inline Formula div(Formula l, Formula r) { return make(ast::Div{std::move(l), std::move(r)}); }
inline Formula dual(Formula f) { return make(ast::Dual{std::move(f)}); }
inline Formula scalar(double k, Formula f) {
  if (!(k >= 0.0) || !std::isfinite(k)) throw Error(ErrorCode::InvalidValue, "scalar must lie in [0, inf)");
  return make(ast::Scalar{k, std::move(f)});
}
inline Formula quant(Polarity pol, double p, std::string var, std::string space, Formula body) {
  if (!(p >= 0.0)) throw Error(ErrorCode::InvalidP, "quantifier exponent must lie in [0, inf]");
  return make(ast::Quant{pol, p, std::move(var), std::move(space), std::move(body)});
}
inline Formula exists(double p, std::string var, std::string space, Formula body) {
  return quant(Polarity::existential, p, std::move(var), std::move(space), std::move(body));
}
inline Formula forall(double p, std::string var, std::string space, Formula body) {
  return quant(Polarity::universal, p, std::move(var), std::move(space), std::move(body));
}

}  // namespace fm

// ---------------------------------------------------------------------------
// Structural equality.

inline bool operator==(const Formula& a, const Formula& b);

namespace ast {
inline bool operator==(const Const& a, const Const& b) {
  return a.name == b.name && (a.name || a.literal == b.literal);
}
inline bool operator==(const Atom& a, const Atom& b) { return a.name == b.name && a.args == b.args; }
inline bool operator==(const BinOp& a, const BinOp& b) { return a.op == b.op && a.lhs == b.lhs && a.rhs == b.rhs; }
inline bool operator==(const Div& a, const Div& b) { return a.lhs == b.lhs && a.rhs == b.rhs; }
inline bool operator==(const Dual& a, const Dual& b) { return a.inner == b.inner; }
inline bool operator==(const Scalar& a, const Scalar& b) { return a.k == b.k && a.inner == b.inner; }
inline bool operator==(const Quant& a, const Quant& b) {
  return a.polarity == b.polarity && a.p == b.p && a.var == b.var && a.space == b.space && a.body == b.body;
}
}  // namespace ast

inline bool operator==(const Formula& a, const Formula& b) {
  if (!a || !b) return !a && !b;
  return a.node() == b.node();
}

// ---------------------------------------------------------------------------
// Printing.

constexpr std::string_view op_symbol(OpCode op) {
  switch (op) {
    case OpCode::join: return "\\/";
    case OpCode::meet: return "/\\";
    case OpCode::add: return "(+)";
    case OpCode::hadd: return "(+*)";
    case OpCode::tensor: return "(x)";
    case OpCode::cotensor: return "(x*)";
  }
  return "?";
}

namespace detail {

inline bool is_chain_level(const Formula& f) {
  return f.as<ast::BinOp>() || f.as<ast::Div>() || f.as<ast::Quant>();
}

inline std::string print_formula(const Formula& f);

inline std::string parens_if(bool wrap, const Formula& f) {
  return wrap ? "(" + print_formula(f) + ")" : print_formula(f);
}

inline std::string print_formula(const Formula& f) {
  struct Printer {
    std::string operator()(const ast::Const& c) const {
      return c.name ? std::string(to_string(*c.name)) : format_exact(c.literal);
    }
    std::string operator()(const ast::Atom& a) const {
      if (a.args.empty()) return a.name;
      std::string s = a.name + "(";
      for (std::size_t i = 0; i < a.args.size(); ++i) s += (i ? "," : "") + a.args[i];
      return s + ")";
    }
    std::string operator()(const ast::BinOp& b) const {
      const auto* lb = b.lhs.as<ast::BinOp>();
      const bool lhs_chains = lb && lb->op == b.op;
      return parens_if(is_chain_level(b.lhs) && !lhs_chains, b.lhs) + " " + std::string(op_symbol(b.op)) + " " +
             parens_if(is_chain_level(b.rhs), b.rhs);
    }
    std::string operator()(const ast::Div& d) const {
      return parens_if(is_chain_level(d.lhs), d.lhs) + " -o " + parens_if(is_chain_level(d.rhs), d.rhs);
    }
    std::string operator()(const ast::Dual& d) const {
      return parens_if(is_chain_level(d.inner) || d.inner.as<ast::Scalar>(), d.inner) + "^*";
    }
    std::string operator()(const ast::Scalar& s) const {
      return format_exact(s.k) + " . " + parens_if(is_chain_level(s.inner), s.inner);
    }
    std::string operator()(const ast::Quant& q) const {
      return std::string(q.polarity == Polarity::existential ? "E^" : "A^") + format_exact(q.p) + " (" + q.var +
             " in " + q.space + "). " + print_formula(q.body);
    }
  };
  return std::visit(Printer{}, f.node());
}

}  // namespace detail

/// Canonical text; parse(print(f)) == f.
inline std::string print(const Formula& f) { return detail::print_formula(f); }

// ---------------------------------------------------------------------------
// Tokenizer and parser.

namespace detail {

enum class Tok { ident, number, lparen, rparen, comma, dot, caret, dualop, binop, divop, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
  double number = 0.0;
  OpCode op = OpCode::join;
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

inline std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view pat) { return s.substr(i, pat.size()) == pat; };

  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;

    if (c == '(') {
      const bool after_ident = i > 0 && ident_char(s[i - 1]);
      struct Pat {
        std::string_view text;
        OpCode op;
        bool needs_gap;
      };
      static constexpr Pat pats[] = {{"(+*)", OpCode::hadd, false},
                                     {"(+)", OpCode::add, false},
                                     {"(x*)", OpCode::cotensor, true},
                                     {"(x)", OpCode::tensor, true}};
      bool matched = false;
      for (const auto& pat : pats) {
        if (starts(pat.text) && !(pat.needs_gap && after_ident)) {
          out.push_back({Tok::binop, std::string(pat.text), start, 0.0, pat.op});
          i += pat.text.size();
          matched = true;
          break;
        }
      }
      if (!matched) {
        out.push_back({Tok::lparen, "(", start});
        ++i;
      }
      continue;
    }
    if (c == ')') { out.push_back({Tok::rparen, ")", start}); ++i; continue; }
    if (c == ',') { out.push_back({Tok::comma, ",", start}); ++i; continue; }
    if (c == '.') { out.push_back({Tok::dot, ".", start}); ++i; continue; }
    if (starts("\\/")) { out.push_back({Tok::binop, "\\/", start, 0.0, OpCode::join}); i += 2; continue; }
    if (starts("/\\")) { out.push_back({Tok::binop, "/\\", start, 0.0, OpCode::meet}); i += 2; continue; }
    if (starts("^*")) { out.push_back({Tok::dualop, "^*", start}); i += 2; continue; }
    if (c == '^') { out.push_back({Tok::caret, "^", start}); ++i; continue; }
    if (starts("-o")) { out.push_back({Tok::divop, "-o", start}); i += 2; continue; }

    const bool negative = c == '-';
    const std::size_t num_at = negative ? i + 1 : i;
    if (num_at < s.size() && (std::isdigit(static_cast<unsigned char>(s[num_at])) ||
                              (s.substr(num_at, 3) == "inf" && (num_at + 3 >= s.size() || !ident_char(s[num_at + 3]))))) {
      std::size_t j = num_at;
      if (s.substr(j, 3) == "inf") {
        j += 3;
      } else {
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j + 1 < s.size() && s[j] == '.' && std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
          ++j;
          while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        }
        if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
          std::size_t k = j + 1;
          if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
          if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
            while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
            j = k;
          }
        }
      }
      std::string text(s.substr(start, j - start));
      out.push_back({Tok::number, text, start, parse_value(text)});
      i = j;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back({Tok::ident, std::string(s.substr(i, j - i)), start});
      i = j;
      continue;
    }
    throw Error(ErrorCode::UnknownToken, "unexpected character '" + std::string(1, c) + "' at position " +
                                             std::to_string(start));
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  Formula parse_all() {
    Formula f = expr();
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(at_ + ahead, toks_.size() - 1)]; }
  Token next() { return toks_[at_ < toks_.size() - 1 ? at_++ : at_]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::SyntaxError, what + " at position " + std::to_string(peek().pos));
  }

  Token expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    return next();
  }

  static bool is_quant_keyword(const Token& t) { return t.kind == Tok::ident && (t.text == "E" || t.text == "A"); }

  Formula expr() {
    if (is_quant_keyword(peek()) && peek(1).kind == Tok::caret) return quantifier();
    return chain();
  }

  Formula quantifier() {
    const Polarity pol = next().text == "E" ? Polarity::existential : Polarity::universal;
    expect(Tok::caret, "'^'");
    const Token p = expect(Tok::number, "quantifier exponent");
    if (!(p.number >= 0.0)) fail("quantifier exponent must be nonnegative");
    expect(Tok::lparen, "'('");
    const Token var = expect(Tok::ident, "bound variable");
    const Token in = expect(Tok::ident, "'in'");
    if (in.text != "in") fail("expected 'in'");
    const Token space = expect(Tok::ident, "space name");
    expect(Tok::rparen, "')'");
    expect(Tok::dot, "'.'");
    Formula body = expr();
    return fm::quant(pol, p.number, var.text, space.text, std::move(body));
  }

  Formula chain() {
    Formula lhs = unary();
    if (peek().kind == Tok::divop) {
      next();
      Formula rhs = unary();
      if (peek().kind == Tok::binop || peek().kind == Tok::divop) {
        fail("'-o' does not chain; add parentheses");
      }
      return fm::div(std::move(lhs), std::move(rhs));
    }
    if (peek().kind != Tok::binop) return lhs;
    const OpCode op = peek().op;
    while (peek().kind == Tok::binop || peek().kind == Tok::divop) {
      if (peek().kind == Tok::divop || peek().op != op) fail("mixed operators need parentheses");
      next();
      lhs = fm::binop(op, std::move(lhs), unary());
    }
    return lhs;
  }

  Formula unary() {
    if (peek().kind == Tok::number && peek(1).kind == Tok::dot) {
      const Token k = next();
      next();
      if (!(k.number >= 0.0) || std::isinf(k.number)) fail("scalar must lie in [0, inf)");
      return fm::scalar(k.number, unary());
    }
    Formula f = primary();
    while (peek().kind == Tok::dualop) {
      next();
      f = fm::dual(std::move(f));
    }
    return f;
  }

  Formula primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::lparen: {
        next();
        Formula f = expr();
        expect(Tok::rparen, "')'");
        return f;
      }
      case Tok::number: return fm::literal(next().number);
      case Tok::ident: {
        if (is_quant_keyword(t)) fail("quantifiers inside an operand need parentheses");
        if (t.text == "in") fail("unexpected 'in'");
        if (auto c = named_const_from(t.text)) {
          next();
          return fm::constant(*c);
        }
        std::string name = next().text;
        std::vector<std::string> args;
        if (peek().kind == Tok::lparen) {
          next();
          if (peek().kind != Tok::rparen) {
            args.push_back(expect(Tok::ident, "variable").text);
            while (peek().kind == Tok::comma) {
              next();
              args.push_back(expect(Tok::ident, "variable").text);
            }
          }
          expect(Tok::rparen, "')'");
        }
        return fm::atom(std::move(name), std::move(args));
      }
      case Tok::end: fail("unexpected end of input");
      default: fail("unexpected '" + t.text + "'");
    }
  }
};

}  // namespace detail

inline Formula parse(std::string_view text) { return detail::Parser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Contexts and well-formedness.

struct Binding {
  std::string var;
  std::string space;
};

/// Ordered variable bindings; names are distinct.
using Context = std::vector<Binding>;

inline const Binding* lookup(const Context& ctx, const std::string& var) {
  for (const auto& b : ctx)
    if (b.var == var) return &b;
  return nullptr;
}

/// Throws on the first violation; returns normally when f is well formed in ctx.
inline void check_wellformed(const Formula& f, const Context& ctx, const Environment& env) {
  struct Checker {
    const Environment& env;
    Context ctx;

    void run(const Formula& f) { std::visit(*this, f.node()); }

    void operator()(const ast::Const&) {}
    void operator()(const ast::Atom& a) {
      auto it = env.atoms.find(a.name);
      if (it == env.atoms.end()) throw Error(ErrorCode::UnknownAtom, "no atom named '" + a.name + "'");
      const auto& decl = it->second.context;
      if (decl.size() != a.args.size()) {
        throw Error(ErrorCode::AtomArity, "atom '" + a.name + "' takes " + std::to_string(decl.size()) +
                                              " arguments, got " + std::to_string(a.args.size()));
      }
      for (std::size_t i = 0; i < decl.size(); ++i) {
        const Binding* b = lookup(ctx, a.args[i]);
        if (!b) throw Error(ErrorCode::UnboundVariable, "variable '" + a.args[i] + "' is not bound");
        if (b->space != decl[i]) {
          throw Error(ErrorCode::AtomArity, "argument " + std::to_string(i + 1) + " of '" + a.name +
                                                "' ranges over '" + decl[i] + "' but '" + a.args[i] +
                                                "' ranges over '" + b->space + "'");
        }
      }
    }
    void operator()(const ast::BinOp& b) { run(b.lhs); run(b.rhs); }
    void operator()(const ast::Div& d) { run(d.lhs); run(d.rhs); }
    void operator()(const ast::Dual& d) { run(d.inner); }
    void operator()(const ast::Scalar& s) { run(s.inner); }
    void operator()(const ast::Quant& q) {
      if (!env.spaces.count(q.space)) throw Error(ErrorCode::UnknownSpace, "no space named '" + q.space + "'");
      if (lookup(ctx, q.var)) throw Error(ErrorCode::ShadowedVariable, "variable '" + q.var + "' is already bound");
      ctx.push_back({q.var, q.space});
      run(q.body);
      ctx.pop_back();
    }
  };
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (!env.spaces.count(ctx[i].space)) {
      throw Error(ErrorCode::UnknownSpace, "no space named '" + ctx[i].space + "'");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (ctx[j].var == ctx[i].var) throw Error(ErrorCode::ShadowedVariable, "context binds '" + ctx[i].var + "' twice");
    }
  }
  Checker{env, ctx}.run(f);
}

/// Free variables in order of first occurrence.
inline std::vector<std::string> free_variables(const Formula& f) {
  std::vector<std::string> out;
  std::vector<std::string> bound;
  auto walk = [&](auto&& self, const Formula& g) -> void {
    if (const auto* a = g.as<ast::Atom>()) {
      for (const auto& v : a->args) {
        if (std::find(bound.begin(), bound.end(), v) == bound.end() &&
            std::find(out.begin(), out.end(), v) == out.end()) {
          out.push_back(v);
        }
      }
    } else if (const auto* b = g.as<ast::BinOp>()) {
      self(self, b->lhs);
      self(self, b->rhs);
    } else if (const auto* d = g.as<ast::Div>()) {
      self(self, d->lhs);
      self(self, d->rhs);
    } else if (const auto* u = g.as<ast::Dual>()) {
      self(self, u->inner);
    } else if (const auto* s = g.as<ast::Scalar>()) {
      self(self, s->inner);
    } else if (const auto* q = g.as<ast::Quant>()) {
      bound.push_back(q->var);
      self(self, q->body);
      bound.pop_back();
    }
  };
  walk(walk, f);
  return out;
}

/// A context for the free variables of f, each typed by the atoms that use it.
inline Context infer_context(const Formula& f, const Environment& env) {
  std::map<std::string, std::string> typing;
  std::vector<std::string> bound;
  auto walk = [&](auto&& self, const Formula& g) -> void {
    if (const auto* a = g.as<ast::Atom>()) {
      const auto& decl = env.atom(a->name).context;
      if (decl.size() != a->args.size()) {
        throw Error(ErrorCode::AtomArity, "atom '" + a->name + "' takes " + std::to_string(decl.size()) +
                                              " arguments, got " + std::to_string(a->args.size()));
      }
      for (std::size_t i = 0; i < decl.size(); ++i) {
        const auto& v = a->args[i];
        if (std::find(bound.begin(), bound.end(), v) != bound.end()) continue;
        auto [it, fresh] = typing.emplace(v, decl[i]);
        if (!fresh && it->second != decl[i]) {
          throw Error(ErrorCode::AtomArity, "variable '" + v + "' used over both '" + it->second + "' and '" +
                                                decl[i] + "'");
        }
      }
    } else if (const auto* b = g.as<ast::BinOp>()) {
      self(self, b->lhs);
      self(self, b->rhs);
    } else if (const auto* d = g.as<ast::Div>()) {
      self(self, d->lhs);
      self(self, d->rhs);
    } else if (const auto* u = g.as<ast::Dual>()) {
      self(self, u->inner);
    } else if (const auto* s = g.as<ast::Scalar>()) {
      self(self, s->inner);
    } else if (const auto* q = g.as<ast::Quant>()) {
      bound.push_back(q->var);
      self(self, q->body);
      bound.pop_back();
    }
  };
  walk(walk, f);
  Context ctx;
  for (const auto& v : free_variables(f)) ctx.push_back({v, typing.at(v)});
  return ctx;
}

// ---------------------------------------------------------------------------
// Rewrites that act on the tree.

template <class OnConst, class OnAtom>
Formula map_leaves(const Formula& f, OnConst&& on_const, OnAtom&& on_atom) {
  auto go = [&](auto&& self, const Formula& g) -> Formula {
    struct V {
      decltype(self)& rec;
      const Formula& g;
      OnConst& oc;
      OnAtom& oa;
      Formula operator()(const ast::Const& c) const { return oc(c, g); }
      Formula operator()(const ast::Atom& a) const { return oa(a, g); }
      Formula operator()(const ast::BinOp& b) const { return fm::binop(b.op, rec(rec, b.lhs), rec(rec, b.rhs)); }
      Formula operator()(const ast::Div& d) const { return fm::div(rec(rec, d.lhs), rec(rec, d.rhs)); }
      Formula operator()(const ast::Dual& d) const { return fm::dual(rec(rec, d.inner)); }
      Formula operator()(const ast::Scalar& s) const { return fm::scalar(s.k, rec(rec, s.inner)); }
      Formula operator()(const ast::Quant& q) const {
        return fm::quant(q.polarity, q.p, q.var, q.space, rec(rec, q.body));
      }
    };
    return std::visit(V{self, g, on_const, on_atom}, g.node());
  };
  return go(go, f);
}

/**
 * Carries numeric literals across the carriers: -log towards add, exp(-x)
 * towards mul. Named constants keep their name (their value in each carrier
 * is fixed by named_const_value) and every other former is left in place.
 * Atom tables move with translate_environment.
 */
inline Formula napier_translate(const Formula& f, Carrier target) {
  return map_leaves(
      f,
      [&](const ast::Const& c, const Formula& g) {
        if (c.name) return g;
        return fm::literal(target == Carrier::add ? detail::napier(c.literal) : detail::napier_inv(c.literal));
      },
      [](const ast::Atom&, const Formula& g) { return g; });
}

/// Renames free occurrences of `from` to `to`. `to` must not be captured by a binder.
inline Formula rename_free(const Formula& f, const std::string& from, const std::string& to) {
  if (const auto* q = f.as<ast::Quant>()) {
    if (q->var == from) return f;
    if (q->var == to) throw Error(ErrorCode::ShadowedVariable, "renaming would capture '" + to + "'");
    return fm::quant(q->polarity, q->p, q->var, q->space, rename_free(q->body, from, to));
  }
  if (const auto* a = f.as<ast::Atom>()) {
    auto args = a->args;
    for (auto& v : args)
      if (v == from) v = to;
    return fm::atom(a->name, std::move(args));
  }
  if (const auto* b = f.as<ast::BinOp>()) return fm::binop(b->op, rename_free(b->lhs, from, to), rename_free(b->rhs, from, to));
  if (const auto* d = f.as<ast::Div>()) return fm::div(rename_free(d->lhs, from, to), rename_free(d->rhs, from, to));
  if (const auto* u = f.as<ast::Dual>()) return fm::dual(rename_free(u->inner, from, to));
  if (const auto* s = f.as<ast::Scalar>()) return fm::scalar(s->k, rename_free(s->inner, from, to));
  return f;
}

}  // namespace qpl
