#pragma once

#include <map>
#include <string>

#include "pmx/ast.hpp"

namespace pmx {

using SortScope = std::map<std::string, Sort>;

/// Annotates every expression with its sort. Throws Error(Type) with a span on sort
/// mismatch, wrong arity or an unbound variable. `spec` supplies `eqn` functions.
Sort typecheck(Expr &e, const SortScope &scope, const Spec *spec = nullptr);

/// Checks a model in place. Also expands the `P()` shorthand (call with unchanged
/// parameters) and rejects recursive function equations.
void typecheck(Spec &spec);

/// Checks a formula in place against the actions and functions of `spec`.
void typecheck(StateFormula &f, const Spec &spec);

} // namespace pmx
