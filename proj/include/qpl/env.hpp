#pragma once

// Named spaces plus tabulated atoms: everything a formula can refer to.

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qpl/error.hpp"
#include "qpl/extreal.hpp"
#include "qpl/mspace.hpp"

namespace qpl {

enum class Carrier { mul, add };

constexpr std::string_view to_string(Carrier c) { return c == Carrier::mul ? "mul" : "add"; }

/// An atom's declared context (space names) and its row-major value table.
struct AtomTable {
  std::vector<std::string> context;
  std::vector<double> values;
};

struct Environment {
  Carrier mode = Carrier::mul;
  std::map<std::string, Space> spaces;
  std::map<std::string, AtomTable> atoms;

  const Space& space(const std::string& name) const {
    auto it = spaces.find(name);
    if (it == spaces.end()) throw Error(ErrorCode::UnknownSpace, "no space named '" + name + "'");
    return it->second;
  }

  const AtomTable& atom(const std::string& name) const {
    auto it = atoms.find(name);
    if (it == atoms.end()) throw Error(ErrorCode::UnknownAtom, "no atom named '" + name + "'");
    return it->second;
  }

  std::size_t table_size(const std::vector<std::string>& context) const {
    std::size_t n = 1;
    for (const auto& s : context) n *= space(s).size();
    return n;
  }

  /// Checks table sizes and carrier validity of every atom.
  void validate() const {
    for (const auto& [name, table] : atoms) {
      for (const auto& s : table.context) {
        if (!spaces.count(s)) {
          throw Error(ErrorCode::UnknownSpace, "atom '" + name + "' refers to unknown space '" + s + "'");
        }
      }
      if (table.values.size() != table_size(table.context)) {
        throw Error(ErrorCode::LengthMismatch, "atom '" + name + "' has " + std::to_string(table.values.size()) +
                                                   " values, expected " + std::to_string(table_size(table.context)));
      }
      for (double v : table.values) {
        if (std::isnan(v) || (mode == Carrier::mul && v < 0.0)) {
          throw Error(ErrorCode::InvalidValue, "atom '" + name + "' has a value outside the " +
                                                   std::string(to_string(mode)) + " carrier");
        }
      }
    }
  }
};

/// Same spaces, every atom table carried to `target` through napier / napier_inv.
inline Environment translate_environment(const Environment& env, Carrier target) {
  Environment out = env;
  if (env.mode == target) return out;
  out.mode = target;
  for (auto& [name, table] : out.atoms) {
    for (double& v : table.values) v = target == Carrier::add ? detail::napier(v) : detail::napier_inv(v);
  }
  return out;
}

}  // namespace qpl
