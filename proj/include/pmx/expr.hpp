#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pmx/error.hpp"
#include "pmx/value.hpp"

namespace pmx {

enum class ExprKind {
  Const,
  Var,
  Negate, // unary minus
  Not,
  Add,
  Sub,
  Mul,
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  And,
  Or,
  Implies,
  Int2Nat,
  Call, // function defined by an `eqn`
};

struct FunctionDef;

struct Expr {
  ExprKind kind = ExprKind::Const;
  Value value;                               // Const
  std::string name;                          // Var, Call
  std::vector<std::shared_ptr<Expr>> args;   // operands / call arguments
  SourceSpan span;

  // Filled in by the type checker.
  std::optional<Sort> sort;
  std::shared_ptr<const FunctionDef> function; // Call
};

using ExprPtr = std::shared_ptr<Expr>;

ExprPtr make_const(Value v, SourceSpan span = {});
ExprPtr make_var(std::string name, SourceSpan span = {});
ExprPtr make_unary(ExprKind kind, ExprPtr operand, SourceSpan span = {});
ExprPtr make_binary(ExprKind kind, ExprPtr lhs, ExprPtr rhs, SourceSpan span = {});
ExprPtr make_call(std::string name, std::vector<ExprPtr> args, SourceSpan span = {});

struct FunctionDef {
  std::string name;
  std::vector<std::pair<std::string, Sort>> params;
  Sort result = Sort::Nat;
  ExprPtr body;
  SourceSpan span;
};

/// Immutable variable environment. Binding returns a new environment.
class Env {
public:
  Env() = default;

  Env bind(const std::string &name, Value v) const;
  /// Throws Error(UnboundVariable) for a missing name.
  const Value &lookup(const std::string &name) const;
  const Value *find(const std::string &name) const;
  bool contains(const std::string &name) const { return find(name) != nullptr; }

  const std::vector<std::pair<std::string, Value>> &entries() const { return entries_; }

  /// Values of the given names in order; each must be bound.
  std::vector<Value> project(const std::vector<std::string> &names) const;
  static Env from(const std::vector<std::string> &names, const std::vector<Value> &values);

  friend bool operator==(const Env &, const Env &) = default;

private:
  std::vector<std::pair<std::string, Value>> entries_; // sorted by name
};

/// Evaluates a type-checked expression.
Value eval(const Expr &e, const Env &env);

/// Bound on Nat/Int enumeration. Absent means no bound is configured.
struct QuantifierConfig {
  std::optional<std::int64_t> bound = 1;
};

/// Bool -> [false, true]; Nat -> [0..bound]; Int -> [-bound..bound].
std::vector<Value> enumerate(Sort sort, const QuantifierConfig &cfg);

void collect_free_vars(const Expr &e, std::set<std::string> &out);
/// Copy of e with every free variable in `renaming` renamed.
ExprPtr rename_vars(const ExprPtr &e, const std::map<std::string, std::string> &renaming);
/// Structural equality ignoring spans and annotations.
bool same_expr(const Expr &a, const Expr &b);

} // namespace pmx
