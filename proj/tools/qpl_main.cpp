// qpl: evaluate formulas, sweep p-means, and run the numeric checks.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qpl/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"quantitative predicate logic toolkit"};
  app.require_subcommand(1);

  std::string env_path;
  std::string mode;
  std::string separator;
  std::string formula;
  std::string atom;
  std::string space;
  std::string grid = "0.25:16:64";
  std::string check;
  std::string map;
  std::vector<std::string> atoms;
  std::string p_text = "1";
  std::uint64_t seed = 20240917;
  std::size_t trials = 0;

  auto* eval = app.add_subcommand("eval", "evaluate a formula over its free variables");
  eval->add_option("--env", env_path, "environment JSON")->required();
  eval->add_option("--mode", mode, "mul or add (translates the environment if needed)");
  eval->add_option("--separator", separator, "unitary, definite, inconsistent or t=<value>");
  eval->add_option("formula", formula)->required();

  auto* plot = app.add_subcommand("plot-data", "CSV of p-sums and p-means along a grid of p");
  plot->add_option("--env", env_path)->required();
  plot->add_option("--atom", atom)->required();
  plot->add_option("--space", space)->required();
  plot->add_option("--grid", grid, "lo:hi:n")->capture_default_str();

  auto* soft = app.add_subcommand("softmax", "softmax_p of a vector atom");
  soft->add_option("--env", env_path)->required();
  soft->add_option("--atom", atom)->required();
  soft->add_option("--p", p_text, "order p, a number or inf")->capture_default_str();

  auto* ent = app.add_subcommand("entropy", "Renyi entropy and Hill number");
  ent->add_option("--env", env_path)->required();
  ent->add_option("--atom", atom)->required();
  ent->add_option("--p", p_text, "order p, a number or inf")->capture_default_str();

  auto* doc = app.add_subcommand("doctrine", "entailment checks");
  doc->add_option("check", check, "reflexivity, adjunction, transitivity-search, laxity")->required();
  doc->add_option("--env", env_path);
  doc->add_option("--p", p_text, "order p, a number or inf")->capture_default_str();
  doc->add_option("--seed", seed)->capture_default_str();
  auto* trials_opt = doc->add_option("--trials", trials);
  doc->add_option("--atoms", atoms)->delimiter(',');
  doc->add_option("--space", space);
  doc->add_option("--map", map);

  auto* tr = app.add_subcommand("translate", "napier translation of a formula");
  tr->add_option("--mode", mode, "target carrier")->required();
  tr->add_option("--env", env_path, "also translate this environment");
  tr->add_option("formula", formula)->required();

  CLI11_PARSE(app, argc, argv);

  using namespace qpl::cli;
  auto& out = std::cout;
  auto& err = std::cerr;
  try {
    const double p = qpl::parse_value(p_text);
    const auto env = [&]() -> std::optional<LoadedEnvironment> {
      if (env_path.empty()) return std::nullopt;
      return load_environment(env_path);
    }();

    if (eval->parsed()) {
      EvalOptions o;
      if (!mode.empty()) o.mode = parse_carrier(mode);
      if (!separator.empty()) o.separator = separator;
      return cmd_eval(*env, formula, o, out, err);
    }
    if (plot->parsed()) return cmd_plot_data(*env, atom, space, grid, out, err);
    if (soft->parsed()) return cmd_softmax(*env, atom, p, out, err);
    if (ent->parsed()) return cmd_entropy(*env, atom, p, out, err);
    if (doc->parsed()) {
      DoctrineOptions o;
      o.p = p;
      o.seed = seed;
      if (trials_opt->count() > 0) o.trials = trials;
      o.atoms = atoms;
      if (!space.empty()) o.space = space;
      if (!map.empty()) o.map = map;
      const LoadedEnvironment fallback{};
      return cmd_doctrine(env ? *env : fallback, check, o, out, err);
    }
    if (tr->parsed()) return cmd_translate(env, formula, parse_carrier(mode), out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
