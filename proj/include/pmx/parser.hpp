#pragma once

#include <map>
#include <string>
#include <string_view>

#include "pmx/ast.hpp"

namespace pmx {

struct ParseOptions {
  std::string file;
  /// Named constants substituted for identifiers in data expressions at parse time
  /// (`--const B=1`).
  std::map<std::string, Value> constants;
};

/// Parses a model file and resolves names: every action, process and function is
/// declared exactly once and every reference points at a declaration.
/// Throws Error (Parse, DuplicateDeclaration, UnknownName).
Spec parse_spec(std::string_view text, const ParseOptions &options = {});

/// Parses a modal formula. Throws Error (Parse, UnboundFixpointVariable, NonMonotoneFixpoint).
FormPtr parse_formula(std::string_view text, const ParseOptions &options = {});

/// Parses a standalone data expression.
ExprPtr parse_expr(std::string_view text, const ParseOptions &options = {});

/// Parses `true`, `false`, a natural or a negative integer literal.
Value parse_value(const std::string &text);

/// Rejects fixpoint variables occurring under an odd number of negations.
void check_monotone(const StateFormula &f);

} // namespace pmx
