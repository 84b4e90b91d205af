#pragma once

// Reference computations and random generators shared by the unit and
// acceptance suites. The oracles are deliberately naive: long double, no
// log-domain tricks, corner cases spelled out from the operation tables.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "qpl/qpl.hpp"

namespace oracle {

using qpl::kInf;
using LD = long double;

inline constexpr LD kInfL = std::numeric_limits<LD>::infinity();

// --- carrier tables ---------------------------------------------------------

inline double tensor(double a, double b) {
  if (a == 0 || b == 0) return 0;
  return double(LD(a) * LD(b));
}
inline double cotensor(double a, double b) {
  if (a == kInf || b == kInf) return kInf;
  return double(LD(a) * LD(b));
}
inline double dual(double a) {
  if (a == 0) return kInf;
  if (a == kInf) return 0;
  return double(1.0L / LD(a));
}
inline double div(double a, double b) {
  if (a == 0 || b == kInf) return kInf;
  if (a == kInf || b == 0) return 0;
  return double(LD(b) / LD(a));
}
inline double hadd(double a, double b) {
  if (a == 0 || b == 0) return 0;
  return double(1.0L / (1.0L / LD(a) + 1.0L / LD(b)));
}
inline double mul_op(qpl::OpCode op, double a, double b) {
  using qpl::OpCode;
  switch (op) {
    case OpCode::join: return std::max(a, b);
    case OpCode::meet: return std::min(a, b);
    case OpCode::add: return double(LD(a) + LD(b));
    case OpCode::hadd: return hadd(a, b);
    case OpCode::tensor: return tensor(a, b);
    case OpCode::cotensor: return cotensor(a, b);
  }
  return 0;
}

// --- means ------------------------------------------------------------------

/// Weighted power mean straight from the definition, finite positive values only.
inline double power_mean(const std::vector<double>& w, const std::vector<double>& a, double p, bool existential) {
  const LD q = existential ? LD(p) : -LD(p);
  LD s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (w[i] > 0) s += LD(w[i]) * std::pow(LD(a[i]), q);
  }
  return double(std::pow(s, 1.0L / q));
}

inline double ess_max(const std::vector<double>& w, const std::vector<double>& a) {
  double m = -1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (w[i] > 0) m = std::max(m, a[i]);
  return m;
}
inline double ess_min(const std::vector<double>& w, const std::vector<double>& a) {
  double m = kInf;
  bool any = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (w[i] > 0) m = any ? std::min(m, a[i]) : a[i], any = true;
  return m;
}

/// Reference quantifier on finite positive values, any p in [0, inf].
inline double quantify(const std::vector<double>& w, const std::vector<double>& a, double p, bool existential) {
  if (p == kInf) return existential ? ess_max(w, a) : ess_min(w, a);
  if (p == 0) {
    LD s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (w[i] > 0) s += LD(w[i]) * std::log(LD(a[i]));
    return double(std::exp(s));
  }
  return power_mean(w, a, p, existential);
}

// --- tolerance --------------------------------------------------------------

inline bool close(double a, double b, double rel) {
  if (a == b) return true;
  if (std::isinf(a) || std::isinf(b) || std::isnan(a) || std::isnan(b)) return false;
  return std::fabs(a - b) <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

/// Relative closeness without the absolute floor at 1; for values that may be tiny.
inline bool close_rel(double a, double b, double rel) {
  if (a == b) return true;
  if (std::isinf(a) || std::isinf(b) || std::isnan(a) || std::isnan(b)) return false;
  return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b));
}

// --- brute force --------------------------------------------------------------

inline std::vector<bool> argmax_scan(const std::vector<double>& w, const std::vector<double>& f) {
  double best = -1;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (w[i] > 0 && f[i] > best) best = f[i];
  std::vector<bool> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i] >= best;
  return out;
}

// --- generators ---------------------------------------------------------------

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
  bool coin(double prob = 0.5) { return std::bernoulli_distribution(prob)(rng); }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[index(v.size())];
  }

  /// 10^U(lo, hi)
  double log_uniform(double lo = -3, double hi = 3) { return std::pow(10.0, uniform(lo, hi)); }

  std::vector<double> positives(std::size_t n, double lo = -3, double hi = 3) {
    std::vector<double> v(n);
    for (double& x : v) x = log_uniform(lo, hi);
    return v;
  }

  /// Positive weights; normalized when `probability`.
  qpl::Space space(const std::string& name, std::size_t n, bool probability) {
    std::vector<double> w(n);
    for (double& x : w) x = uniform(0.1, 2.0);
    std::vector<std::string> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(name + std::to_string(i));
    qpl::Space s(name, pts, w);
    return probability ? qpl::normalize(s) : s;
  }

  /// Mostly finite positive values, sometimes 0 or inf.
  double mul_value_with_corners() {
    const double r = uniform(0, 1);
    if (r < 0.08) return 0.0;
    if (r < 0.16) return kInf;
    if (r < 0.24) return 1.0;
    return log_uniform(-2, 2);
  }
};

/// Random ASTs for round-trip tests. Not well-formed in any environment.
inline qpl::Formula random_ast(Gen& g, int depth) {
  namespace fm = qpl::fm;
  static const std::vector<std::string> names{"f", "g", "rho", "u_1", "phi'", "x"};
  static const std::vector<std::string> vars{"x", "y", "z1", "i", "j"};
  static const std::vector<std::string> spaces{"X", "Y", "Space2", "I"};
  static const std::vector<double> numbers{0.0, 1.0, 0.5, 2.0, 1e-5, 12345.678, 3.141592653589793, kInf, -kInf,
                                           -2.5, 0.1, 7.0};
  auto leaf = [&]() -> qpl::Formula {
    switch (g.index(3)) {
      case 0: return fm::constant(static_cast<qpl::NamedConst>(g.index(6)));
      case 1: {
        const double v = g.coin(0.5) ? g.pick(numbers) : g.log_uniform(-6, 6);
        return fm::literal(v);
      }
      default: {
        std::vector<std::string> args;
        const std::size_t n = g.index(3);
        for (std::size_t i = 0; i < n; ++i) args.push_back(g.pick(vars));
        return fm::atom(g.pick(names), args);
      }
    }
  };
  if (depth <= 0 || g.coin(0.2)) return leaf();
  switch (g.index(5)) {
    case 0: return fm::binop(qpl::kAllOps[g.index(6)], random_ast(g, depth - 1), random_ast(g, depth - 1));
    case 1: return fm::div(random_ast(g, depth - 1), random_ast(g, depth - 1));
    case 2: return fm::dual(random_ast(g, depth - 1));
    case 3: {
      static const std::vector<double> ks{0.0, 0.5, 1.0, 2.0, 3.75, 1e-3};
      return fm::scalar(g.pick(ks), random_ast(g, depth - 1));
    }
    default: {
      static const std::vector<double> ps{0.0, 0.5, 1.0, 2.0, 7.0, kInf, 1.25};
      return fm::quant(g.coin() ? qpl::Polarity::existential : qpl::Polarity::universal, g.pick(ps), g.pick(vars),
                       g.pick(spaces), random_ast(g, depth - 1));
    }
  }
}

/// Structural equality where numeric literals only need to agree to `rel`.
inline bool same_shape(const qpl::Formula& a, const qpl::Formula& b, double rel) {
  using namespace qpl::ast;
  if (const auto* x = a.as<Const>()) {
    const auto* y = b.as<Const>();
    if (!y || x->name != y->name) return false;
    return x->name || close_rel(x->literal, y->literal, rel);
  }
  if (a.as<Atom>()) return a == b;
  if (const auto* x = a.as<BinOp>()) {
    const auto* y = b.as<BinOp>();
    return y && x->op == y->op && same_shape(x->lhs, y->lhs, rel) && same_shape(x->rhs, y->rhs, rel);
  }
  if (const auto* x = a.as<Div>()) {
    const auto* y = b.as<Div>();
    return y && same_shape(x->lhs, y->lhs, rel) && same_shape(x->rhs, y->rhs, rel);
  }
  if (const auto* x = a.as<Dual>()) {
    const auto* y = b.as<Dual>();
    return y && same_shape(x->inner, y->inner, rel);
  }
  if (const auto* x = a.as<Scalar>()) {
    const auto* y = b.as<Scalar>();
    return y && x->k == y->k && same_shape(x->inner, y->inner, rel);
  }
  const auto* x = a.as<Quant>();
  const auto* y = b.as<Quant>();
  return x && y && x->polarity == y->polarity && x->p == y->p && x->var == y->var && x->space == y->space &&
         same_shape(x->body, y->body, rel);
}

/// Environment with spaces X (2-4 points), Y (1-3 points) and atoms
/// f over [X], g over [Y], r over [X, Y], c over [].
inline qpl::Environment random_environment(Gen& g) {
  qpl::Environment env;
  env.mode = qpl::Carrier::mul;
  const auto X = g.space("X", 2 + g.index(3), g.coin());
  const auto Y = g.space("Y", 1 + g.index(3), g.coin());
  env.spaces.emplace("X", X);
  env.spaces.emplace("Y", Y);
  auto table = [&](std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) x = g.mul_value_with_corners();
    return v;
  };
  env.atoms.emplace("f", qpl::AtomTable{{"X"}, table(X.size())});
  env.atoms.emplace("g", qpl::AtomTable{{"Y"}, table(Y.size())});
  env.atoms.emplace("r", qpl::AtomTable{{"X", "Y"}, table(X.size() * Y.size())});
  env.atoms.emplace("c", qpl::AtomTable{{}, table(1)});
  return env;
}

/// Well-formed random formula over random_environment's signature in the given scope.
inline qpl::Formula random_formula(Gen& g, int depth, std::vector<qpl::Binding> scope, int& fresh) {
  namespace fm = qpl::fm;
  auto vars_of = [&](const std::string& space) {
    std::vector<std::string> v;
    for (const auto& b : scope)
      if (b.space == space) v.push_back(b.var);
    return v;
  };
  auto leaf = [&]() -> qpl::Formula {
    std::vector<qpl::Formula> options;
    const auto xs = vars_of("X");
    const auto ys = vars_of("Y");
    if (!xs.empty()) options.push_back(fm::atom("f", {g.pick(xs)}));
    if (!ys.empty()) options.push_back(fm::atom("g", {g.pick(ys)}));
    if (!xs.empty() && !ys.empty()) options.push_back(fm::atom("r", {g.pick(xs), g.pick(ys)}));
    options.push_back(fm::atom("c", {}));
    static const std::vector<double> lits{0.0, 0.5, 1.0, 3.0, kInf};
    if (g.coin(0.3)) {
      return g.coin() ? fm::constant(static_cast<qpl::NamedConst>(g.index(6))) : fm::literal(g.pick(lits));
    }
    return g.pick(options);
  };
  if (depth <= 0 || g.coin(0.15)) return leaf();
  switch (g.index(5)) {
    case 0: {
      const auto op = qpl::kAllOps[g.index(6)];
      return fm::binop(op, random_formula(g, depth - 1, scope, fresh), random_formula(g, depth - 1, scope, fresh));
    }
    case 1:
      return fm::div(random_formula(g, depth - 1, scope, fresh), random_formula(g, depth - 1, scope, fresh));
    case 2: return fm::dual(random_formula(g, depth - 1, scope, fresh));
    case 3: {
      static const std::vector<double> ks{0.0, 0.5, 1.0, 2.0};
      return fm::scalar(g.pick(ks), random_formula(g, depth - 1, scope, fresh));
    }
    default: {
      static const std::vector<double> ps{0.0, 0.5, 1.0, 2.0, 7.0, kInf};
      const std::string space = g.coin() ? "X" : "Y";
      const std::string var = "v" + std::to_string(fresh++);
      scope.push_back({var, space});
      auto body = random_formula(g, depth - 1, scope, fresh);
      return fm::quant(g.coin() ? qpl::Polarity::existential : qpl::Polarity::universal, g.pick(ps), var, space,
                       body);
    }
  }
}

}  // namespace oracle
