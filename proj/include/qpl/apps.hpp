#pragma once

// softmax, argmax, log-likelihood, Renyi entropy and Hill numbers.
//
// Each quantity has a direct numeric formula and a route through the
// formula evaluator.
//
//   softmax_p(f)(y)   A^p (x in X). f(x) -o f(y)            (mul)
//   log-likelihood    A^1 (x in X). u(x) -o u(y)            (add)
//   H_p(phi)          p/(1-p) . A^p (i in I). nlphi(i)^*     (add, nlphi = -log phi)
//
// The scalar p/(1-p) is negative for p > 1, which the surface grammar does
// not allow, so the entropy routes apply it with the library's signed
// scalar after evaluating the quantified part.
//
// softmax and log-likelihood work on the normalized space. Entropies use
// the space weights as given (counting weights with a probability vector,
// or any weights the vector integrates to 1 against).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qpl/env.hpp"
#include "qpl/error.hpp"
#include "qpl/extreal.hpp"
#include "qpl/formula.hpp"
#include "qpl/mspace.hpp"
#include "qpl/quantmean.hpp"
#include "qpl/semantics.hpp"

namespace qpl {

/// Masses phi(i) over a space.
class Distribution {
 public:
  Distribution(Space space, std::vector<double> masses) : space_(std::move(space)), masses_(std::move(masses)) {
    if (masses_.size() != space_.size()) throw Error(ErrorCode::LengthMismatch, "distribution length mismatch");
    for (double m : masses_) MulReal{m};
  }

  const Space& space() const { return space_; }
  const std::vector<double>& masses() const { return masses_; }

  /// integral of phi against the space weights
  double integral() const {
    detail::CompensatedSum s;
    for (std::size_t i = 0; i < masses_.size(); ++i) s.add(detail::mul_tensor(space_.weight(i), masses_[i]));
    return s.value();
  }

  /// Lands in [0, 1] and integrates to 1 within 1e-12.
  bool is_unitary() const {
    for (double m : masses_)
      if (m > 1.0) return false;
    return std::fabs(integral() - 1.0) <= 1e-12;
  }

 private:
  Space space_;
  std::vector<double> masses_;
};

/// Energies u(x); phi = exp(-u). Entries are finite or +inf.
class EnergyFunction {
 public:
  EnergyFunction(Space space, std::vector<double> energies)
      : space_(std::move(space)), energies_(std::move(energies)) {
    if (energies_.size() != space_.size()) throw Error(ErrorCode::LengthMismatch, "energy length mismatch");
    for (double u : energies_) {
      if (std::isnan(u) || u == -kInf) throw Error(ErrorCode::InvalidValue, "energies must be finite or +inf");
    }
  }

  const Space& space() const { return space_; }
  const std::vector<double>& energies() const { return energies_; }

 private:
  Space space_;
  std::vector<double> energies_;
};

namespace detail {

inline Space probability_version(const Space& s) { return s.is_probability() ? s : normalize(s); }

inline void check_soft_p(double p) {
  if (!(p > 0.0)) throw Error(ErrorCode::InvalidP, "softmax needs p in (0, inf]");
}

inline void check_order(double p) {
  if (!(p >= 0.0)) throw Error(ErrorCode::InvalidP, "entropy order must lie in [0, inf]");
}

inline void check_unitary(const Distribution& phi) {
  if (!phi.is_unitary()) {
    throw Error(ErrorCode::NotUnitary, "distribution is not unitary (integral " + format_value(phi.integral()) + ")");
  }
}

/// A^p (x in X). a(x) -o a(y), evaluated in context [y : X].
inline Formula ratio_formula(double p, const std::string& atom, const std::string& space) {
  return fm::forall(p, "x", space, fm::div(fm::atom(atom, {"x"}), fm::atom(atom, {"y"})));
}

inline Environment single_atom_env(Carrier mode, const Space& space, const std::string& atom,
                                   std::vector<double> values) {
  Environment env;
  env.mode = mode;
  env.spaces.emplace(space.name(), space);
  env.atoms.emplace(atom, AtomTable{{space.name()}, std::move(values)});
  return env;
}

}  // namespace detail

/// softmax_p(f)(y) = f(y) / E^p f over the normalized space.
inline ValueVector softmax_p(const ValueVector& f, double p) {
  detail::check_soft_p(p);
  const Space space = detail::probability_version(f.space());
  const MulReal mean = p_mean(SignedP::exists(p), ValueVector(space, f.values()));
  if (mean.is_zero()) throw Error(ErrorCode::ZeroPredicate, "softmax of a predicate that vanishes on the support");
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = detail::mul_div(mean.value(), f[i]);
  return ValueVector(space, std::move(out));
}

/// The same quantity read off the formula A^p (x in X). f(x) -o f(y).
inline ValueVector softmax_p_formula(const ValueVector& f, double p) {
  detail::check_soft_p(p);
  const Space space = detail::probability_version(f.space());
  if (!space.has_support()) throw Error(ErrorCode::EmptySupport, "softmax over an empty support");
  const auto env = detail::single_atom_env(Carrier::mul, space, "f", f.values());
  const auto pred = eval_mul(detail::ratio_formula(p, "f", space.name()), {{"y", space.name()}}, env);
  return ValueVector(space, pred.table);
}

/// Unitary-separator cast of softmax_inf: true exactly at the maximum points.
inline std::vector<bool> argmax(const ValueVector& f) {
  const auto soft = softmax_p(f, kInf);
  const auto sep = Separator::unitary();
  std::vector<bool> out;
  for (double v : soft.values()) out.push_back(sep.cast(v));
  return out;
}

/// L(y) as the additive semantics of A^1 (x in X). u(x) -o u(y).
inline std::vector<double> log_likelihood(const EnergyFunction& u) {
  const Space space = detail::probability_version(u.space());
  if (!space.has_support()) throw Error(ErrorCode::EmptySupport, "log-likelihood over an empty support");
  const auto env = detail::single_atom_env(Carrier::add, space, "u", u.energies());
  return eval_add(detail::ratio_formula(1.0, "u", space.name()), {{"y", space.name()}}, env).table;
}

/// -log softmax_1(exp(-u)), computed without the evaluator.
inline std::vector<double> log_likelihood_direct(const EnergyFunction& u) {
  std::vector<double> f;
  for (double e : u.energies()) f.push_back(detail::napier_inv(e));
  const auto soft = softmax_p(ValueVector(u.space(), std::move(f)), 1.0);
  std::vector<double> out;
  for (double v : soft.values()) out.push_back(detail::napier(v));
  return out;
}

/// -integral phi log phi, with 0 log 0 = 0.
inline double shannon_entropy(const Distribution& phi) {
  detail::check_unitary(phi);
  detail::CompensatedSum s;
  for (std::size_t i = 0; i < phi.masses().size(); ++i) {
    const double m = phi.masses()[i];
    const double w = phi.space().weight(i);
    if (w > 0.0 && m > 0.0) s.add(-w * m * std::log(m));
  }
  return s.value();
}

/// H_p = log(integral phi^p) / (1 - p); orders 0, 1 and inf by their limits.
inline double renyi_entropy(const Distribution& phi, double p) {
  detail::check_order(p);
  detail::check_unitary(phi);
  if (p == 1.0) return shannon_entropy(phi);
  const auto& w = phi.space().weights();
  const auto& m = phi.masses();
  if (p == kInf) {
    double hi = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (w[i] > 0.0) hi = std::max(hi, m[i]);
    return -std::log(hi);
  }
  detail::CompensatedSum s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (w[i] > 0.0 && m[i] > 0.0) s.add(p == 0.0 ? w[i] : w[i] * std::pow(m[i], p));
  }
  return std::log(s.value()) / (1.0 - p);
}

/// Scale factor p/(1-p), with its limit -1 at p = inf.
inline double entropy_scale(double p) { return p == kInf ? -1.0 : p / (1.0 - p); }

/// p/(1-p) . A^p (i in I). nlphi(i)^* in the additive carrier. Defined for p in (0, inf] \ {1}.
inline double renyi_entropy_formula(const Distribution& phi, double p) {
  detail::check_order(p);
  detail::check_unitary(phi);
  if (p == 0.0 || p == 1.0) throw Error(ErrorCode::InvalidP, "the scaled formula degenerates at p = 0 and p = 1");
  std::vector<double> nl;
  for (double m : phi.masses()) nl.push_back(detail::napier(m));
  const Space& space = phi.space();
  const auto env = detail::single_atom_env(Carrier::add, space, "nlphi", std::move(nl));
  const auto f = fm::forall(p, "i", space.name(), fm::dual(fm::atom("nlphi", {"i"})));
  const double q = eval_add(f, {}, env).table.front();
  return add_scalar(entropy_scale(p), AddReal(q)).value();
}

/// Hill number D_p = exp(H_p), computed directly.
inline double hill_diversity(const Distribution& phi, double p) {
  detail::check_order(p);
  detail::check_unitary(phi);
  if (p == 1.0) return std::exp(shannon_entropy(phi));
  const auto& w = phi.space().weights();
  const auto& m = phi.masses();
  if (p == kInf) {
    double hi = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (w[i] > 0.0) hi = std::max(hi, m[i]);
    return 1.0 / hi;
  }
  detail::CompensatedSum s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (w[i] > 0.0 && m[i] > 0.0) s.add(p == 0.0 ? w[i] : w[i] * std::pow(m[i], p));
  }
  return p == 0.0 ? s.value() : std::pow(s.value(), 1.0 / (1.0 - p));
}

/**
 * Multiplicative route: p/(1-p) . A^p (i in I). phi(i)^* evaluates to
 * exp(-H_p), the napier image of the entropy formula, so the Hill number is
 * its dual. Defined for p in (0, inf] \ {1}.
 */
inline double hill_diversity_formula(const Distribution& phi, double p) {
  detail::check_order(p);
  detail::check_unitary(phi);
  if (p == 0.0 || p == 1.0) throw Error(ErrorCode::InvalidP, "the scaled formula degenerates at p = 0 and p = 1");
  const Space& space = phi.space();
  const auto env = detail::single_atom_env(Carrier::mul, space, "phi", phi.masses());
  const auto f = fm::forall(p, "i", space.name(), fm::dual(fm::atom("phi", {"i"})));
  const double q = eval_mul(f, {}, env).table.front();
  return detail::mul_dual(detail::mul_pow_signed(entropy_scale(p), q));
}

}  // namespace qpl
