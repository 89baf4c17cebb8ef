#pragma once

#include <compare>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pmx/ast.hpp"

namespace pmx {

struct ActionInstance {
  std::string name;
  std::vector<Value> args;

  std::string text() const;
  friend bool operator==(const ActionInstance &, const ActionInstance &) = default;
  friend auto operator<=>(const ActionInstance &a, const ActionInstance &b) {
    if (auto c = a.name <=> b.name; c != 0)
      return c;
    return a.args <=> b.args;
  }
};

/// A transition label: a nonempty bag of action instances. Kept sorted by the
/// instances' text, which is also the canonical rendering order.
class MultiAction {
public:
  MultiAction() = default;
  explicit MultiAction(std::vector<ActionInstance> actions);

  const std::vector<ActionInstance> &actions() const { return actions_; }
  /// Sorted action names (the bag that `allow` inspects).
  std::vector<std::string> names() const;
  /// Instances joined with `|`, e.g. `set_flag(0,true)|wish(0)`.
  const std::string &text() const { return text_; }
  bool empty() const { return actions_.empty(); }

  friend bool operator==(const MultiAction &a, const MultiAction &b) { return a.text_ == b.text_; }
  friend auto operator<=>(const MultiAction &a, const MultiAction &b) { return a.text_ <=> b.text_; }

private:
  std::vector<ActionInstance> actions_;
  std::string text_;
};

/// Replaces matching send/receive pairs with equal arguments by the rule's result,
/// repeatedly until no rule applies.
MultiAction apply_comm(const MultiAction &label, const std::vector<CommRule> &rules);

/// True iff the label's name bag equals one of the allowed bags.
bool allowed(const MultiAction &label, const std::vector<std::vector<std::string>> &allow);

/// Does `label` satisfy the action formula under `env`? Pattern arguments that are
/// bare variables unbound in `env` unify with the label's values; the resulting
/// bindings (and those chosen for `exists` binders) are written to `witness`.
bool match(const ActionFormula &af, const MultiAction &label, const Env &env, Env *witness = nullptr);

struct SemanticsConfig {
  QuantifierConfig quantifiers;
  /// Process unfoldings allowed without producing an action.
  std::size_t unfold_limit = 10000;
};

/// Structural operational semantics over hash-consed closed process terms.
///
/// A state is the id of a canonical term: process instances are kept as
/// (process, argument values), other residuals as (AST node, values of the node's
/// free variables), and parallel/comm/allow wrappers as trees over those.
/// Successor sets are memoised behind an internal lock, so concurrent calls are safe.
class Semantics {
public:
  using State = int;
  using Successors = std::vector<std::pair<MultiAction, State>>;

  Semantics(const Spec &spec, SemanticsConfig cfg = {});
  ~Semantics();
  Semantics(const Semantics &) = delete;
  Semantics &operator=(const Semantics &) = delete;

  State initial();
  /// The state of the process instance `name(args)`.
  State instance(const std::string &name, const std::vector<Value> &args);

  /// Outgoing transitions, sorted by (label text, canonical target text), no duplicates.
  const Successors &step(State s);

  /// Canonical closed-term text of a state; equal texts iff equal states.
  const std::string &canonical(State s);

  std::size_t term_count() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

} // namespace pmx
