#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pmx/ast.hpp"

namespace pmx {

enum class NfKind { Val, And, Or, Forall, Exists, Box, Diamond, Mu, Nu, Var };

struct NormalFormula;
using NfPtr = std::shared_ptr<NormalFormula>;

/// Positive normal form: negation only inside Val expressions and action
/// formulas, no implication, no Kleene star. And/Or are n-ary with Val children
/// first, then modalities, then everything else.
struct NormalFormula {
  NfKind kind = NfKind::Val;
  int id = 0;                    // index into NormalForm::nodes
  ExprPtr expr;                  // Val (true/false are constant expressions)
  std::vector<NfPtr> operands;   // And/Or (>=2), quantifiers/modalities/fixpoints (1)
  std::string name;              // quantifier binder, fixpoint or variable name
  Sort sort = Sort::Nat;         // quantifier binder sort
  ActPtr action;                 // Box/Diamond
  std::vector<FixParam> params;  // Mu/Nu
  std::vector<ExprPtr> args;     // Var
  int binder = -1;               // Var: id of its Mu/Nu node
  int alternation = 0;           // Mu/Nu: alternations between the outermost binder and this one
  std::vector<std::string> free; // free data variables, sorted
};

struct NormalForm {
  NfPtr root;
  std::vector<const NormalFormula *> nodes; // by id, in preorder
  int alternation_levels = 0;               // 1 + max alternation, 0 without fixpoints
};

/// Throws Error(NonMonotoneFixpoint) when a fixpoint variable occurs under an odd
/// number of negations. Data binders shadowing an enclosing binder are renamed.
NormalForm normalize(const StateFormula &f);

std::string unparse(const NormalFormula &f);

} // namespace pmx
