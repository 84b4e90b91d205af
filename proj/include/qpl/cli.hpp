#pragma once

// Command implementations behind the `qpl` tool. Each command writes its
// report to `out`, diagnostics to `err`, and returns the process exit code:
// 0 success (or the expected outcome of a check), 1 input error, 2 a check
// did not show its expected outcome.
//
// Environment file (JSON):
//   {
//     "mode": "mul" | "add",
//     "spaces": { "X": { "points": ["x1", ...], "weights": [0.5, ...] } },
//     "atoms":  { "f": { "context": ["X"], "values": [1, "inf", ...] } },
//     "maps":   { "c": { "source": "X", "target": "Y", "assignment": ["y1", ...] } }
//   }
// Atom values are row-major over the context. "inf" / "-inf" strings encode
// the infinities. "maps" is optional; assignments name target points (or
// give their indices).

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qpl/apps.hpp"
#include "qpl/doctrine.hpp"
#include "qpl/env.hpp"
#include "qpl/error.hpp"
#include "qpl/extreal.hpp"
#include "qpl/formula.hpp"
#include "qpl/mspace.hpp"
#include "qpl/quantmean.hpp"
#include "qpl/semantics.hpp"

namespace qpl::cli {

using json = nlohmann::json;

struct LoadedEnvironment {
  Environment env;
  std::map<std::string, PointMap> maps;
};

namespace detail {

inline double json_number(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_value(j.get<std::string>());
  throw Error(ErrorCode::InvalidInput, where + ": expected a number or \"inf\"/\"-inf\"");
}

inline json number_json(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  return v;
}

inline const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::InvalidInput, where + ": missing \"" + key + "\"");
  return j.at(key);
}

}  // namespace detail

inline LoadedEnvironment parse_environment(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, std::string("environment is not valid JSON: ") + e.what());
  }
  LoadedEnvironment out;
  const std::string mode = detail::member(doc, "mode", "environment").get<std::string>();
  if (mode == "mul") {
    out.env.mode = Carrier::mul;
  } else if (mode == "add") {
    out.env.mode = Carrier::add;
  } else {
    throw Error(ErrorCode::InvalidInput, "mode must be \"mul\" or \"add\"");
  }

  for (const auto& [name, js] : detail::member(doc, "spaces", "environment").items()) {
    const std::string where = "space '" + name + "'";
    std::vector<std::string> points = detail::member(js, "points", where).get<std::vector<std::string>>();
    std::vector<double> weights;
    for (const auto& w : detail::member(js, "weights", where)) weights.push_back(detail::json_number(w, where));
    out.env.spaces.emplace(name, Space(name, std::move(points), std::move(weights)));
  }

  if (doc.contains("atoms")) {
    for (const auto& [name, ja] : doc.at("atoms").items()) {
      const std::string where = "atom '" + name + "'";
      AtomTable t;
      t.context = detail::member(ja, "context", where).get<std::vector<std::string>>();
      for (const auto& v : detail::member(ja, "values", where)) t.values.push_back(detail::json_number(v, where));
      out.env.atoms.emplace(name, std::move(t));
    }
  }
  out.env.validate();

  if (doc.contains("maps")) {
    for (const auto& [name, jm] : doc.at("maps").items()) {
      const std::string where = "map '" + name + "'";
      const Space& src = out.env.space(detail::member(jm, "source", where).get<std::string>());
      const Space& tgt = out.env.space(detail::member(jm, "target", where).get<std::string>());
      std::vector<std::size_t> assignment;
      for (const auto& a : detail::member(jm, "assignment", where)) {
        if (a.is_number_unsigned()) {
          assignment.push_back(a.get<std::size_t>());
        } else if (a.is_string()) {
          const std::size_t k = tgt.index_of(a.get<std::string>());
          if (k == tgt.size()) throw Error(ErrorCode::InvalidInput, where + ": unknown target point");
          assignment.push_back(k);
        } else {
          throw Error(ErrorCode::InvalidInput, where + ": assignment entries are point labels or indices");
        }
      }
      out.maps.emplace(name, PointMap(src, tgt, std::move(assignment)));
    }
  }
  return out;
}

inline LoadedEnvironment load_environment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot read environment file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_environment(ss.str());
}

inline json environment_to_json(const Environment& env) {
  json doc;
  doc["mode"] = std::string(to_string(env.mode));
  doc["spaces"] = json::object();
  for (const auto& [name, s] : env.spaces) {
    doc["spaces"][name] = {{"points", s.points()}, {"weights", s.weights()}};
  }
  doc["atoms"] = json::object();
  for (const auto& [name, t] : env.atoms) {
    json values = json::array();
    for (double v : t.values) values.push_back(detail::number_json(v));
    doc["atoms"][name] = {{"context", t.context}, {"values", values}};
  }
  return doc;
}

inline Carrier parse_carrier(const std::string& s) {
  if (s == "mul") return Carrier::mul;
  if (s == "add") return Carrier::add;
  throw Error(ErrorCode::InvalidInput, "mode must be 'mul' or 'add'");
}

/// "unitary", "definite", "inconsistent" or "t=<value>".
inline Separator parse_separator(const std::string& s) {
  if (s == "unitary") return Separator::unitary();
  if (s == "definite") return Separator::definite();
  if (s == "inconsistent") return Separator::inconsistent();
  if (s.rfind("t=", 0) == 0) return Separator::principal(parse_value(s.substr(2)));
  throw Error(ErrorCode::InvalidInput, "separator must be unitary, definite, inconsistent or t=<value>");
}

/// "lo:hi:n", n evenly spaced exponents from lo to hi inclusive, 0 < lo <= hi < inf.
inline std::vector<double> parse_grid(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (a == std::string::npos || b == std::string::npos) {
    throw Error(ErrorCode::InvalidInput, "grid must look like lo:hi:n");
  }
  const double lo = parse_value(text.substr(0, a));
  const double hi = parse_value(text.substr(a + 1, b - a - 1));
  const std::string ns = text.substr(b + 1);
  if (ns.empty() || ns.find_first_not_of("0123456789") != std::string::npos) {
    throw Error(ErrorCode::InvalidInput, "grid size must be a positive integer");
  }
  const std::size_t n = std::stoul(ns);
  if (n == 0 || !(lo > 0.0) || !(hi >= lo) || std::isinf(hi)) {
    throw Error(ErrorCode::InvalidInput, "grid needs 0 < lo <= hi < inf and n >= 1");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(n == 1 ? lo : lo + (hi - lo) * double(i) / double(n - 1));
  return out;
}

inline std::string fixed12(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

namespace detail {

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

/// A one-context atom as a value vector over its space.
inline ValueVector vector_atom(const Environment& env, const std::string& name) {
  const AtomTable& t = env.atom(name);
  if (t.context.size() != 1) {
    throw Error(ErrorCode::AtomArity, "atom '" + name + "' must have exactly one context space");
  }
  return ValueVector(env.space(t.context.front()), t.values);
}

inline Environment as_carrier(const Environment& env, Carrier c) { return translate_environment(env, c); }

inline std::string join_values(const std::vector<double>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_value(v[i]);
  return s + ")";
}

inline void print_report(std::ostream& out, const EntailmentReport& r) {
  out << "law: " << r.law << "\n"
      << "value=" << format_value(r.value) << " lhs=" << format_value(r.lhs) << " rhs=" << format_value(r.rhs)
      << " gap=" << format_value(r.gap) << " verdict=" << to_string(r.verdict) << "\n";
}

}  // namespace detail

// ---------------------------------------------------------------------------

struct EvalOptions {
  std::optional<Carrier> mode;
  std::optional<std::string> separator;
};

/// Evaluates a formula over the context of its free variables and prints the table.
inline int cmd_eval(const LoadedEnvironment& loaded, const std::string& text, const EvalOptions& opt,
                    std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const Carrier mode = opt.mode.value_or(loaded.env.mode);
    const Environment env = detail::as_carrier(loaded.env, mode);
    const std::optional<Separator> sep =
        opt.separator ? std::optional<Separator>(parse_separator(*opt.separator)) : std::nullopt;
    const Formula f = parse(text);
    const Context ctx = infer_context(f, env);
    const Predicate pred = mode == Carrier::mul ? eval_mul(f, ctx, env) : eval_add(f, ctx, env);
    std::vector<bool> cast;
    if (sep) cast = separator_cast(*sep, pred);

    for (const auto& b : ctx) out << b.var << "\t";
    out << "value";
    if (sep) out << "\t" << sep->describe();
    out << "\n";
    for (std::size_t k = 0; k < pred.size(); ++k) {
      const auto idx = pred.unflat(k);
      for (std::size_t i = 0; i < ctx.size(); ++i) out << env.space(ctx[i].space).points()[idx[i]] << "\t";
      out << format_value(pred.table[k]);
      if (sep) out << "\t" << (cast[k] ? "true" : "false");
      out << "\n";
    }
    return 0;
  });
}

/// Prints the napier translation of a formula (and, if given, of the environment).
inline int cmd_translate(const std::optional<LoadedEnvironment>& loaded, const std::string& text, Carrier target,
                         std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    out << print(napier_translate(parse(text), target)) << "\n";
    if (loaded) out << environment_to_json(translate_environment(loaded->env, target)).dump(2) << "\n";
    return 0;
  });
}

/// CSV of p-sums, p-means and the extrema of a vector atom along a grid of p.
inline int cmd_plot_data(const LoadedEnvironment& loaded, const std::string& atom, const std::string& space,
                         const std::string& grid, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const Environment env = detail::as_carrier(loaded.env, Carrier::mul);
    const ValueVector v = detail::vector_atom(env, atom);
    if (v.space().name() != space) {
      throw Error(ErrorCode::AtomArity, "atom '" + atom + "' lives on '" + v.space().name() + "', not '" + space + "'");
    }
    const auto ps = parse_grid(grid);
    double hi = 0.0, lo = kInf;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v.space().in_support(i)) continue;
      hi = std::max(hi, v[i]);
      lo = std::min(lo, v[i]);
    }
    if (lo == kInf && hi == 0.0) throw Error(ErrorCode::EmptySupport, "space '" + space + "' has empty support");
    out << "p,psum_pos,psum_neg,pmean_pos,pmean_neg,max,min\n";
    for (double p : ps) {
      out << format_value(p) << "," << format_value(p_sum(SignedP::exists(p), v.values()).value()) << ","
          << format_value(p_sum(SignedP::forall(p), v.values()).value()) << ","
          << format_value(p_mean(SignedP::exists(p), v).value()) << ","
          << format_value(p_mean(SignedP::forall(p), v).value()) << "," << format_value(hi) << ","
          << format_value(lo) << "\n";
    }
    return 0;
  });
}

/// softmax_p of a vector atom. In an additive environment the atom is an
/// energy u, softmax is taken of exp(-u) and the log-likelihood is printed too.
inline int cmd_softmax(const LoadedEnvironment& loaded, const std::string& atom, double p, std::ostream& out,
                       std::ostream& err) {
  return detail::guarded(err, [&] {
    const bool energies = loaded.env.mode == Carrier::add;
    const Environment env = detail::as_carrier(loaded.env, Carrier::mul);
    const ValueVector f = detail::vector_atom(env, atom);
    const ValueVector soft = softmax_p(f, p);
    const ValueVector via_formula = softmax_p_formula(f, p);
    std::vector<double> ll;
    if (energies) ll = log_likelihood(EnergyFunction(f.space(), detail::vector_atom(loaded.env, atom).values()));

    out << "softmax p=" << format_value(p) << " atom=" << atom << " space=" << f.space().name() << "\n";
    out << "point\t" << (energies ? "u" : "f") << "\tsoftmax";
    if (energies) out << "\tloglik";
    out << "\n";
    double gap = 0.0;
    qpl::detail::CompensatedSum integral;
    for (std::size_t i = 0; i < f.size(); ++i) {
      out << f.space().points()[i] << "\t"
          << format_value(energies ? loaded.env.atom(atom).values[i] : f[i]) << "\t" << format_value(soft[i]);
      if (energies) out << "\t" << format_value(ll[i]);
      out << "\n";
      integral.add(qpl::detail::mul_tensor(soft.space().weight(i), soft[i]));
      gap = std::max(gap, qpl::detail::relative_gap(soft[i], via_formula[i]));
    }
    out << "integral=" << format_value(integral.value());
    if (p == 1.0) out << " normalized=" << (std::fabs(integral.value() - 1.0) <= 1e-12 ? "yes" : "no");
    out << "\n";
    out << "formula-path gap=" << format_value(gap) << "\n";
    return 0;
  });
}

/// Renyi entropy and Hill number of a unitary vector atom.
inline int cmd_entropy(const LoadedEnvironment& loaded, const std::string& atom, double p, std::ostream& out,
                       std::ostream& err) {
  return detail::guarded(err, [&] {
    const Environment env = detail::as_carrier(loaded.env, Carrier::mul);
    const ValueVector v = detail::vector_atom(env, atom);
    const Distribution phi(v.space(), v.values());
    const double h = renyi_entropy(phi, p);
    const double d = hill_diversity(phi, p);
    const double expected = std::exp(h);
    const bool ok = qpl::detail::relative_gap(expected, d) <= 1e-9;
    out << "H=" << fixed12(h) << ", D=" << fixed12(d) << "\n";
    out << "exp(H)=" << fixed12(expected) << " cross-check=" << (ok ? "ok" : "MISMATCH") << "\n";
    return ok ? 0 : 2;
  });
}

struct DoctrineOptions {
  double p = 1.0;
  std::uint64_t seed = 20240917;
  std::optional<std::size_t> trials;
  std::vector<std::string> atoms;
  std::optional<std::string> space;
  std::optional<std::string> map;
};

inline int cmd_doctrine(const LoadedEnvironment& loaded, const std::string& check, const DoctrineOptions& opt,
                        std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&]() -> int {
    const Environment env = detail::as_carrier(loaded.env, Carrier::mul);
    const double p = opt.p;

    if (check == "reflexivity") {
      ValueVector phi = [&] {
        if (!opt.atoms.empty()) return detail::vector_atom(env, opt.atoms.front());
        if (env.spaces.empty()) throw Error(ErrorCode::InvalidInput, "reflexivity needs a space");
        const Space& s = opt.space ? env.space(*opt.space) : env.spaces.begin()->second;
        return ValueVector(s, std::vector<double>(s.size(), 1.0));
      }();
      const auto r = reflexivity_check(phi, p);
      out << "space=" << phi.space().name() << " mass=" << format_value(phi.space().total_mass())
          << " p=" << format_value(p) << "\n";
      out << "phi |- phi = " << format_value(r.lhs) << "\n";
      out << "|I|^{-1/p} = " << format_value(r.rhs) << "\n";
      out << "verdict: " << (r.verdict == Verdict::holds ? "matches |I|^{-1/p}" : "does not match |I|^{-1/p}")
          << "\n";
      out << "reflexive: " << (r.lhs == 1.0 ? "yes" : "no") << "\n";
      return r.verdict == Verdict::holds ? 0 : 2;
    }

    if (check == "adjunction") {
      if (opt.atoms.size() >= 2) {
        const AtomTable& rho = env.atom(opt.atoms[0]);
        const AtomTable& psi = env.atom(opt.atoms[1]);
        if (rho.context.size() != 2 || psi.context.size() != 1 || rho.context[0] != psi.context[0]) {
          throw Error(ErrorCode::DimensionMismatch, "adjunction needs rho over [I, K] and psi over [I]");
        }
        const auto r =
            adjunction_check(env.space(rho.context[0]), env.space(rho.context[1]), rho.values, psi.values, p);
        detail::print_report(out, r);
        return r.verdict == Verdict::holds ? 0 : 2;
      }
      const std::size_t trials = opt.trials.value_or(500);
      std::size_t held = 0;
      double worst = 0.0;
      for (std::size_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(trial_seed(opt.seed, t));
        std::uniform_real_distribution<double> w(0.1, 1.0);
        auto random_space = [&](const char* name) {
          std::vector<double> ws(3);
          for (double& x : ws) x = w(rng);
          return normalize(Space(name, {"1", "2", "3"}, ws));
        };
        const Space I = random_space("I");
        const Space K = random_space("K");
        const auto rho = log_uniform_values(rng, 9);
        const auto psi = log_uniform_values(rng, 3);
        const auto r = adjunction_check(I, K, rho, psi, p);
        worst = std::max(worst, r.gap);
        if (r.verdict == Verdict::holds) ++held;
      }
      out << "adjunction E^p_K -| reindexing, p=" << format_value(p) << "\n";
      out << "instances=" << trials << " held=" << held << " max relative gap=" << format_value(worst) << "\n";
      out << "verdict: " << (held == trials ? "holds" : "violated") << "\n";
      return held == trials ? 0 : 2;
    }

    if (check == "transitivity-search") {
      const Space s = opt.space ? env.space(*opt.space) : Space("uniform2", {"i1", "i2"}, {0.5, 0.5});
      const auto r = transitivity_search(s, p, opt.trials.value_or(10000), opt.seed);
      detail::print_report(out, r);
      out << "witness phi=" << detail::join_values(r.witness[0]) << " psi=" << detail::join_values(r.witness[1])
          << " sigma=" << detail::join_values(r.witness[2]) << "\n";
      out << "inverse form: " << format_value(r.lhs) << " vs " << format_value(r.rhs) << "\n";
      return r.verdict == Verdict::violated ? 0 : 2;
    }

    if (check == "laxity") {
      auto show = [&](const std::string& label, const LaxityReport& r) {
        out << label << ": (f!phi)(f!psi)=" << detail::join_values(r.tensor_of_pushforwards)
            << " f!(phi psi)=" << detail::join_values(r.pushforward_of_tensor) << "\n";
        out << "  lax direction " << (r.lax_fails ? "fails" : "holds") << ", colax direction "
            << (r.colax_fails ? "fails" : "holds") << "\n";
      };
      if (opt.map) {
        auto it = loaded.maps.find(*opt.map);
        if (it == loaded.maps.end()) throw Error(ErrorCode::InvalidInput, "no map named '" + *opt.map + "'");
        if (opt.atoms.size() < 2) throw Error(ErrorCode::InvalidInput, "laxity with a map needs --atoms phi,psi");
        const auto r = laxity_check(it->second, detail::vector_atom(env, opt.atoms[0]).values(),
                                    detail::vector_atom(env, opt.atoms[1]).values());
        show(*opt.map, r);
        return r.lax_fails || r.colax_fails ? 0 : 2;
      }
      const Space two("uniform2", {"i1", "i2"}, {0.5, 0.5});
      const Space one("point", {"j"}, {1.0});
      const PointMap collapse(two, one, {0, 0});
      const auto a = laxity_check(collapse, {1.0, 0.0}, {0.0, 1.0});
      const auto b = laxity_check(collapse, {2.0, 0.0}, {2.0, 0.0});
      show("collapse, phi=(1,0) psi=(0,1)", a);
      show("collapse, phi=psi=(2,0)", b);
      const bool both = a.lax_fails && b.colax_fails;
      out << "verdict: " << (both ? "violated in both directions" : "unexpected") << "\n";
      return both ? 0 : 2;
    }

    throw Error(ErrorCode::InvalidInput,
                "unknown check '" + check + "' (reflexivity, adjunction, transitivity-search, laxity)");
  });
}

}  // namespace qpl::cli
