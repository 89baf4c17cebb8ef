#pragma once

#include <map>
#include <memory>
#include <string>

#include "pmx/evidence.hpp"
#include "pmx/parser.hpp"

namespace pmx {

struct CheckConfig {
  QuantifierConfig quantifiers;
  std::size_t max_states = 1000000;
  std::size_t max_vertices = 10000000;
  std::map<std::string, Value> constants; // substituted into formulas
};

struct CheckResult {
  bool holds = false;
  std::shared_ptr<const Lts> lts;
  std::shared_ptr<const ParityGame> game;
  Solution solution;
  bool solution_verified = false;
  Evidence evidence;
};

/// Throws Error(Io) when the file cannot be read.
std::string read_file(const std::string &path);

/// Parses and typechecks a model.
Spec load_spec(const std::string &text, const std::string &file = "<model>");
/// Parses and typechecks a formula against `spec`.
FormPtr load_formula(const std::string &text, const Spec &spec, const CheckConfig &cfg = {},
                     const std::string &file = "<formula>");

Lts explore(const Spec &spec, const CheckConfig &cfg);

CheckResult check(const Spec &spec, const StateFormula &f, const CheckConfig &cfg = {});
CheckResult check(std::shared_ptr<const Lts> lts, const StateFormula &f, const CheckConfig &cfg = {});

} // namespace pmx
