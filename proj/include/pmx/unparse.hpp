#pragma once

#include <string>

#include "pmx/ast.hpp"

namespace pmx {

// Canonical, fully parenthesised renderings. Parsing the output yields the same AST.

std::string unparse(const Expr &e, const Env *subst = nullptr);
std::string unparse(const ProcExpr &p, const Env *subst = nullptr);
std::string unparse(const Spec &s);
std::string unparse(const ActionFormula &a);
std::string unparse(const RegularFormula &r);
std::string unparse(const StateFormula &f);

} // namespace pmx
