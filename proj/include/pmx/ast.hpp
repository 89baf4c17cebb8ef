#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pmx/expr.hpp"

namespace pmx {

// ---------------------------------------------------------------------------
// Process language

/// One action occurrence `name(args)` inside a multi-action.
struct ActionTerm {
  std::string name;
  std::vector<ExprPtr> args;
  SourceSpan span;
};

/// `a_s|a_r -> a`
struct CommRule {
  std::string send;
  std::string receive;
  std::string result;
  SourceSpan span;
};

enum class ProcKind {
  Prefix,     // multi-action . continuation
  Choice,     // left + right
  Sum,        // sum var:sort . body
  IfThenElse, // cond -> then <> else
  Call,       // Name(args)
  Parallel,   // left || right
  Comm,       // comm({...}, operand)
  Allow,      // allow({...}, operand)
  Deadlock,   // delta
};

struct ProcExpr;
using ProcPtr = std::shared_ptr<ProcExpr>;

struct ProcExpr {
  ProcKind kind = ProcKind::Deadlock;
  SourceSpan span;

  std::vector<ActionTerm> actions; // Prefix
  ProcPtr left;                    // Prefix continuation, Choice/Parallel lhs, Sum body, If then, Comm/Allow operand
  ProcPtr right;                   // Choice/Parallel rhs, If else

  std::string name; // Call target, Sum binder
  Sort sort = Sort::Bool; // Sum binder sort
  ExprPtr cond;           // IfThenElse
  std::vector<ExprPtr> args; // Call

  std::vector<CommRule> comm;                        // Comm
  std::vector<std::vector<std::string>> allow;       // Allow: sorted name multisets

  int proc_index = -1; // Call, resolved by the checker
};

ProcPtr make_proc(ProcKind kind, SourceSpan span = {});

struct ProcParam {
  std::string name;
  Sort sort;
};

struct ProcDef {
  std::string name;
  std::vector<ProcParam> params;
  ProcPtr body;
  SourceSpan span;
};

struct SortAlias {
  std::string name;
  Sort sort;
  SourceSpan span;
};

struct ActionDecl {
  std::string name;
  std::vector<Sort> params;
  SourceSpan span;
};

/// A parsed model.
struct Spec {
  std::vector<SortAlias> sorts;
  std::vector<ActionDecl> actions;
  std::vector<std::shared_ptr<FunctionDef>> functions;
  std::vector<ProcDef> processes;
  ProcPtr init;
  std::string file;

  const ActionDecl *find_action(const std::string &name) const;
  const FunctionDef *find_function(const std::string &name) const;
  int find_process(const std::string &name) const;
};

// ---------------------------------------------------------------------------
// Modal formulas

enum class ActKind { Any, Match, Not, And, Or, Exists };

struct ActionFormula;
using ActPtr = std::shared_ptr<ActionFormula>;

struct ActionFormula {
  ActKind kind = ActKind::Any;
  SourceSpan span;
  std::vector<ActionTerm> pattern; // Match: bag of action patterns
  std::vector<ActPtr> operands;    // Not (1), And/Or (2), Exists (1)
  std::string var;                 // Exists binder
  Sort sort = Sort::Nat;
};

ActPtr make_act(ActKind kind, SourceSpan span = {});

/// A single action formula, optionally under a Kleene star.
struct RegularFormula {
  ActPtr action;
  bool star = false;
};

enum class FormKind {
  True,
  False,
  And,
  Or,
  Not,
  Implies,
  Val,
  Forall,
  Exists,
  Box,
  Diamond,
  Mu,
  Nu,
  Var,
};

struct FixParam {
  std::string name;
  Sort sort;
  ExprPtr init;
};

struct StateFormula;
using FormPtr = std::shared_ptr<StateFormula>;

struct StateFormula {
  FormKind kind = FormKind::True;
  SourceSpan span;
  std::vector<FormPtr> operands; // And/Or/Implies (2), Not/quantifiers/modalities/fixpoints (1)
  ExprPtr expr;                  // Val
  std::string name;              // quantifier binder, fixpoint or variable name
  Sort sort = Sort::Nat;         // quantifier binder sort
  RegularFormula regular;        // Box/Diamond
  std::vector<FixParam> params;  // Mu/Nu
  std::vector<ExprPtr> args;     // Var
};

FormPtr make_form(FormKind kind, SourceSpan span = {});

// Structural equality ignoring source positions.
bool same_proc(const ProcExpr &a, const ProcExpr &b);
bool same_spec(const Spec &a, const Spec &b);
bool same_act(const ActionFormula &a, const ActionFormula &b);
bool same_formula(const StateFormula &a, const StateFormula &b);

} // namespace pmx
