#pragma once

// Evaluation of formulas to tabulated predicates, and separators.
//
// Evaluation is bottom-up over full tables. A predicate over the context
// [(x, X), (y, Y)] stores |X| * |Y| values, row-major in context order.
// A quantifier over (v in S) evaluates its body in the context extended by
// v, then reduces each contiguous run of |S| entries with the soft quantifier.
//
// eval_mul and eval_add are separate recursions. The additive one has its
// own log-domain quantifier kernel and is related to the multiplicative one
// only through napier, which the tests check.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpl/env.hpp"
#include "qpl/error.hpp"
#include "qpl/extreal.hpp"
#include "qpl/formula.hpp"
#include "qpl/quantmean.hpp"

namespace qpl {

struct Predicate {
  Context context;
  std::vector<std::size_t> dims;
  std::vector<double> table;
  Carrier carrier = Carrier::mul;

  std::size_t size() const { return table.size(); }

  /// Row-major position of a multi-index.
  std::size_t flat(std::span<const std::size_t> idx) const {
    std::size_t k = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) k = k * dims[i] + idx[i];
    return k;
  }

  std::vector<std::size_t> unflat(std::size_t k) const {
    std::vector<std::size_t> idx(dims.size());
    for (std::size_t i = dims.size(); i-- > 0;) {
      idx[i] = k % dims[i];
      k /= dims[i];
    }
    return idx;
  }
};

namespace detail {

class Evaluator {
 public:
  Evaluator(const Environment& env, Carrier carrier) : env_(env), carrier_(carrier) {}

  std::vector<double> eval(const Formula& f, const Context& ctx) {
    ctx_ = ctx;
    dims_.clear();
    for (const auto& b : ctx_) dims_.push_back(env_.space(b.space).size());
    return run(f);
  }

 private:
  const Environment& env_;
  Carrier carrier_;
  Context ctx_;
  std::vector<std::size_t> dims_;

  bool mul() const { return carrier_ == Carrier::mul; }

  std::size_t table_size() const {
    std::size_t n = 1;
    for (auto d : dims_) n *= d;
    return n;
  }

  std::vector<double> run(const Formula& f) {
    if (const auto* c = f.as<ast::Const>()) {
      double v = c->name ? named_const_value(*c->name, carrier_) : c->literal;
      if (mul() && v < 0.0) {
        throw Error(ErrorCode::CarrierMismatch, "literal " + format_value(v) + " is not a multiplicative value");
      }
      return std::vector<double>(table_size(), v);
    }
    if (const auto* a = f.as<ast::Atom>()) return atom(*a);
    if (const auto* b = f.as<ast::BinOp>()) {
      auto l = run(b->lhs);
      const auto r = run(b->rhs);
      for (std::size_t i = 0; i < l.size(); ++i) l[i] = mul() ? mul_binop(b->op, l[i], r[i]) : add_binop(b->op, l[i], r[i]);
      return l;
    }
    if (const auto* d = f.as<ast::Div>()) {
      auto l = run(d->lhs);
      const auto r = run(d->rhs);
      for (std::size_t i = 0; i < l.size(); ++i) l[i] = mul() ? mul_div(l[i], r[i]) : add_div(l[i], r[i]);
      return l;
    }
    if (const auto* u = f.as<ast::Dual>()) {
      auto t = run(u->inner);
      for (double& v : t) v = mul() ? mul_dual(v) : -v;
      return t;
    }
    if (const auto* s = f.as<ast::Scalar>()) {
      auto t = run(s->inner);
      for (double& v : t) v = mul() ? mul_pow(s->k, v) : add_scalar(s->k, v);
      return t;
    }
    const auto& q = *f.as<ast::Quant>();
    const Space& space = env_.space(q.space);
    const std::size_t m = space.size();
    ctx_.push_back({q.var, q.space});
    dims_.push_back(m);
    const auto body = run(q.body);
    ctx_.pop_back();
    dims_.pop_back();

    const SignedP sp{q.polarity, q.p};
    std::vector<double> out(table_size());
    for (std::size_t o = 0; o < out.size(); ++o) {
      std::span<const double> slice(body.data() + o * m, m);
      out[o] = mul() ? p_mean_raw(sp, space.weights(), slice) : add_p_mean_raw(sp, space.weights(), slice);
    }
    return out;
  }

  std::vector<double> atom(const ast::Atom& a) {
    const AtomTable& t = env_.atom(a.name);
    // position of each argument within the current context
    std::vector<std::size_t> where;
    for (const auto& v : a.args) {
      std::size_t k = ctx_.size();
      for (std::size_t i = ctx_.size(); i-- > 0;) {
        if (ctx_[i].var == v) {
          k = i;
          break;
        }
      }
      if (k == ctx_.size()) throw Error(ErrorCode::UnboundVariable, "variable '" + v + "' is not bound");
      where.push_back(k);
    }
    std::vector<std::size_t> atom_dims;
    for (const auto& s : t.context) atom_dims.push_back(env_.space(s).size());

    std::vector<double> out(table_size());
    std::vector<std::size_t> idx(dims_.size(), 0);
    for (std::size_t k = 0; k < out.size(); ++k) {
      std::size_t pos = 0;
      for (std::size_t j = 0; j < where.size(); ++j) pos = pos * atom_dims[j] + idx[where[j]];
      out[k] = t.values[pos];
      // odometer increment, last index fastest
      for (std::size_t i = dims_.size(); i-- > 0;) {
        if (++idx[i] < dims_[i]) break;
        idx[i] = 0;
      }
    }
    return out;
  }
};

inline Predicate evaluate(const Formula& f, const Context& ctx, const Environment& env, Carrier carrier) {
  if (env.mode != carrier) {
    throw Error(ErrorCode::CarrierMismatch, "environment holds " + std::string(to_string(env.mode)) +
                                                " tables, evaluation needs " + std::string(to_string(carrier)));
  }
  check_wellformed(f, ctx, env);
  Predicate out;
  out.context = ctx;
  out.carrier = carrier;
  for (const auto& b : ctx) out.dims.push_back(env.space(b.space).size());
  out.table = Evaluator(env, carrier).eval(f, ctx);
  return out;
}

}  // namespace detail

/// Multiplicative semantics: values in [0, inf].
inline Predicate eval_mul(const Formula& f, const Context& ctx, const Environment& env) {
  return detail::evaluate(f, ctx, env, Carrier::mul);
}

/// Additive semantics: values in [-inf, inf], logically ordered in reverse.
inline Predicate eval_add(const Formula& f, const Context& ctx, const Environment& env) {
  return detail::evaluate(f, ctx, env, Carrier::add);
}

/// Casts a multiplicative truth value to a Boolean by a threshold [t, inf].
class Separator {
 public:
  /// Everything is true.
  static Separator inconsistent() { return Separator(std::nullopt); }
  static Separator unitary() { return Separator(1.0); }
  static Separator definite() { return Separator(kInf); }

  /// t >= 1 (t = inf allowed). t = 0 is the inconsistent separator; t in (0, 1)
  /// is not closed under tensor and is rejected.
  static Separator principal(double t) {
    if (std::isnan(t) || t < 0.0 || (t > 0.0 && t < 1.0)) {
      throw Error(ErrorCode::InvalidThreshold, "separator threshold " + format_value(t) + " must be >= 1");
    }
    if (t == 0.0) return inconsistent();
    return Separator(t);
  }

  std::optional<double> threshold() const { return threshold_; }

  bool operator()(MulReal v) const { return cast(v.value()); }
  bool cast(double mul_value) const { return !threshold_ || mul_value >= *threshold_; }

  std::string describe() const {
    if (!threshold_) return "inconsistent";
    if (*threshold_ == 1.0) return "unitary";
    if (*threshold_ == kInf) return "definite";
    return "t=" + format_value(*threshold_);
  }

 private:
  explicit Separator(std::optional<double> t) : threshold_(t) {}
  std::optional<double> threshold_;
};

inline bool separator_cast(const Separator& s, MulReal v) { return s(v); }

/// Pointwise cast; additive predicates are read through napier_inv first.
inline std::vector<bool> separator_cast(const Separator& s, const Predicate& p) {
  std::vector<bool> out;
  out.reserve(p.size());
  for (double v : p.table) out.push_back(s.cast(p.carrier == Carrier::mul ? v : detail::napier_inv(v)));
  return out;
}

}  // namespace qpl
