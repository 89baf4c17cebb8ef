#include "pmx/semantics.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "pmx/unparse.hpp"

namespace pmx {

std::string ActionInstance::text() const {
  if (args.empty())
    return name;
  std::string out = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i)
      out += ',';
    out += args[i].text();
  }
  return out + ")";
}

MultiAction::MultiAction(std::vector<ActionInstance> actions) : actions_(std::move(actions)) {
  std::vector<std::pair<std::string, std::size_t>> keyed;
  keyed.reserve(actions_.size());
  for (std::size_t i = 0; i < actions_.size(); ++i)
    keyed.emplace_back(actions_[i].text(), i);
  std::sort(keyed.begin(), keyed.end());
  std::vector<ActionInstance> sorted;
  sorted.reserve(actions_.size());
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i)
      text_ += '|';
    text_ += keyed[i].first;
    sorted.push_back(std::move(actions_[keyed[i].second]));
  }
  actions_ = std::move(sorted);
}

std::vector<std::string> MultiAction::names() const {
  std::vector<std::string> out;
  for (const auto &a : actions_)
    out.push_back(a.name);
  std::sort(out.begin(), out.end());
  return out;
}

MultiAction apply_comm(const MultiAction &label, const std::vector<CommRule> &rules) {
  std::vector<ActionInstance> acts = label.actions();
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto &rule : rules) {
      for (std::size_t i = 0; i < acts.size() && !changed; ++i) {
        if (acts[i].name != rule.send)
          continue;
        for (std::size_t j = 0; j < acts.size(); ++j) {
          if (j == i || acts[j].name != rule.receive || acts[j].args != acts[i].args)
            continue;
          ActionInstance fused{rule.result, acts[i].args};
          acts.erase(acts.begin() + static_cast<std::ptrdiff_t>(std::max(i, j)));
          acts.erase(acts.begin() + static_cast<std::ptrdiff_t>(std::min(i, j)));
          acts.push_back(std::move(fused));
          changed = true;
          break;
        }
      }
    }
  }
  return MultiAction(std::move(acts));
}

bool allowed(const MultiAction &label, const std::vector<std::vector<std::string>> &allow) {
  std::vector<std::string> names = label.names();
  return std::find(allow.begin(), allow.end(), names) != allow.end();
}

// ---------------------------------------------------------------------------
// Action formula matching

namespace {

bool unify(const std::vector<ActionTerm> &pattern, std::size_t k, const std::vector<ActionInstance> &acts,
           std::vector<bool> &used, Env &env) {
  if (k == pattern.size())
    return true;
  const ActionTerm &p = pattern[k];
  for (std::size_t i = 0; i < acts.size(); ++i) {
    if (used[i] || acts[i].name != p.name || acts[i].args.size() != p.args.size())
      continue;
    Env trial = env;
    bool ok = true;
    for (std::size_t a = 0; a < p.args.size() && ok; ++a) {
      const Expr &e = *p.args[a];
      if (e.kind == ExprKind::Var && !trial.contains(e.name))
        trial = trial.bind(e.name, acts[i].args[a]);
      else
        ok = eval(e, trial) == acts[i].args[a];
    }
    if (!ok)
      continue;
    used[i] = true;
    if (unify(pattern, k + 1, acts, used, trial)) {
      env = trial;
      return true;
    }
    used[i] = false;
  }
  return false;
}

} // namespace

bool match(const ActionFormula &af, const MultiAction &label, const Env &env, Env *witness) {
  switch (af.kind) {
  case ActKind::Any:
    return true;
  case ActKind::Match: {
    if (af.pattern.size() != label.actions().size())
      return false;
    std::vector<bool> used(label.actions().size(), false);
    Env bound = env;
    if (!unify(af.pattern, 0, label.actions(), used, bound))
      return false;
    if (witness)
      *witness = bound;
    return true;
  }
  case ActKind::Not:
    return !match(*af.operands[0], label, env, nullptr);
  case ActKind::And:
    return match(*af.operands[0], label, env, witness) && match(*af.operands[1], label, env, witness);
  case ActKind::Or:
    return match(*af.operands[0], label, env, witness) || match(*af.operands[1], label, env, witness);
  case ActKind::Exists: {
    std::set<Value> candidates;
    for (const auto &a : label.actions())
      for (const Value &v : a.args) {
        if (af.sort == Sort::Bool ? v.is_bool() : !v.is_bool()) {
          if (af.sort == Sort::Nat && v.as_int() < 0)
            continue;
          candidates.insert(v.as(af.sort));
        }
      }
    for (const Value &v : candidates) {
      Env inner = env.bind(af.var, v);
      if (match(*af.operands[0], label, inner, witness))
        return true;
    }
    return false;
  }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Terms

namespace {

enum class TermKind { Deadlock, Call, Closure, Par, Comm, Allow };

struct Term {
  TermKind kind = TermKind::Deadlock;
  int proc = -1;
  const ProcExpr *node = nullptr;
  std::vector<Value> values;
  int left = -1;
  int right = -1;
};

struct TermKey {
  TermKind kind;
  int proc;
  const ProcExpr *node;
  std::vector<Value> values;
  int left;
  int right;
  std::string text; // closures are keyed by their canonical text

  bool operator==(const TermKey &) const = default;
};

struct TermKeyHash {
  std::size_t operator()(const TermKey &k) const {
    std::size_t h = std::hash<int>{}(static_cast<int>(k.kind));
    h = h * 31 + std::hash<int>{}(k.proc);
    h = h * 31 + std::hash<const void *>{}(k.kind == TermKind::Closure ? nullptr : k.node);
    h = hash_values(k.values, h);
    h = h * 31 + std::hash<int>{}(k.left);
    h = h * 31 + std::hash<int>{}(k.right);
    return h * 31 + std::hash<std::string>{}(k.text);
  }
};

void proc_free_vars(const ProcExpr &p, std::set<std::string> &out) {
  switch (p.kind) {
  case ProcKind::Prefix:
    for (const auto &a : p.actions)
      for (const auto &e : a.args)
        collect_free_vars(*e, out);
    proc_free_vars(*p.left, out);
    break;
  case ProcKind::Choice:
  case ProcKind::Parallel:
    proc_free_vars(*p.left, out);
    proc_free_vars(*p.right, out);
    break;
  case ProcKind::Sum: {
    std::set<std::string> inner;
    proc_free_vars(*p.left, inner);
    inner.erase(p.name);
    out.insert(inner.begin(), inner.end());
    break;
  }
  case ProcKind::IfThenElse:
    collect_free_vars(*p.cond, out);
    proc_free_vars(*p.left, out);
    proc_free_vars(*p.right, out);
    break;
  case ProcKind::Call:
    for (const auto &e : p.args)
      collect_free_vars(*e, out);
    break;
  case ProcKind::Comm:
  case ProcKind::Allow:
    proc_free_vars(*p.left, out);
    break;
  case ProcKind::Deadlock:
    break;
  }
}

} // namespace

struct Semantics::Impl {
  const Spec &spec;
  SemanticsConfig cfg;
  std::vector<Term> terms;
  std::unordered_map<TermKey, int, TermKeyHash> index;
  std::vector<std::unique_ptr<Successors>> memo;
  std::vector<std::unique_ptr<std::string>> texts;
  std::unordered_map<const ProcExpr *, std::vector<std::string>> free_vars;
  std::vector<int> unfolding; // process instances being unfolded without an action
  int init = -1;
  std::mutex lock; // guards every member above; results are never moved once stored

  Impl(const Spec &s, SemanticsConfig c) : spec(s), cfg(c) {}

  const std::vector<std::string> &fv(const ProcExpr &p) {
    auto it = free_vars.find(&p);
    if (it != free_vars.end())
      return it->second;
    std::set<std::string> names;
    proc_free_vars(p, names);
    return free_vars.emplace(&p, std::vector<std::string>(names.begin(), names.end())).first->second;
  }

  int intern(Term t, std::string closure_text = {}) {
    TermKey key{t.kind, t.proc, t.node, t.values, t.left, t.right, std::move(closure_text)};
    if (t.kind == TermKind::Closure)
      key.values.clear();
    auto it = index.find(key);
    if (it != index.end())
      return it->second;
    int id = static_cast<int>(terms.size());
    terms.push_back(std::move(t));
    memo.emplace_back();
    texts.emplace_back();
    index.emplace(std::move(key), id);
    return id;
  }

  int call_term(int proc, std::vector<Value> args) {
    const ProcDef &def = spec.processes[proc];
    for (std::size_t i = 0; i < args.size(); ++i)
      args[i] = args[i].as(def.params[i].sort);
    Term t;
    t.kind = TermKind::Call;
    t.proc = proc;
    t.values = std::move(args);
    return intern(std::move(t));
  }

  int normalize(const ProcExpr &p, const Env &env) {
    switch (p.kind) {
    case ProcKind::Deadlock: {
      Term t;
      return intern(t);
    }
    case ProcKind::Call: {
      std::vector<Value> args;
      for (const auto &a : p.args)
        args.push_back(eval(*a, env));
      return call_term(p.proc_index, std::move(args));
    }
    case ProcKind::IfThenElse:
      return normalize(eval(*p.cond, env).as_bool() ? *p.left : *p.right, env);
    case ProcKind::Parallel: {
      Term t;
      t.kind = TermKind::Par;
      t.left = normalize(*p.left, env);
      t.right = normalize(*p.right, env);
      return intern(std::move(t));
    }
    case ProcKind::Comm:
    case ProcKind::Allow: {
      Term t;
      t.kind = p.kind == ProcKind::Comm ? TermKind::Comm : TermKind::Allow;
      t.node = &p;
      t.left = normalize(*p.left, env);
      return intern(std::move(t));
    }
    default: {
      Term t;
      t.kind = TermKind::Closure;
      t.node = &p;
      const auto &names = fv(p);
      t.values = env.project(names);
      Env local = Env::from(names, t.values);
      return intern(std::move(t), unparse(p, &local));
    }
    }
  }

  MultiAction label_of(const std::vector<ActionTerm> &actions, const Env &env) {
    std::vector<ActionInstance> out;
    for (const auto &a : actions) {
      ActionInstance inst{a.name, {}};
      const ActionDecl *decl = spec.find_action(a.name);
      for (std::size_t i = 0; i < a.args.size(); ++i) {
        Value v = eval(*a.args[i], env);
        inst.args.push_back(decl ? v.as(decl->params[i]) : v);
      }
      out.push_back(std::move(inst));
    }
    return MultiAction(std::move(out));
  }

  void step_node(const ProcExpr &p, const Env &env, Successors &out) {
    switch (p.kind) {
    case ProcKind::Prefix:
      out.emplace_back(label_of(p.actions, env), normalize(*p.left, env));
      break;
    case ProcKind::Choice:
      step_node(*p.left, env, out);
      step_node(*p.right, env, out);
      break;
    case ProcKind::Sum:
      for (const Value &v : enumerate(p.sort, cfg.quantifiers))
        step_node(*p.left, env.bind(p.name, v), out);
      break;
    case ProcKind::IfThenElse:
      step_node(eval(*p.cond, env).as_bool() ? *p.left : *p.right, env, out);
      break;
    default: {
      const Successors &succ = step(normalize(p, env));
      out.insert(out.end(), succ.begin(), succ.end());
    }
    }
  }

  const Successors &step(int id) {
    if (memo[id])
      return *memo[id];
    Successors out;
    // Copy: `terms` may grow while stepping.
    Term t = terms[id];
    switch (t.kind) {
    case TermKind::Deadlock:
      break;
    case TermKind::Call: {
      if (std::find(unfolding.begin(), unfolding.end(), id) != unfolding.end() ||
          unfolding.size() >= cfg.unfold_limit)
        throw Error(ErrorKind::UnguardedRecursion,
                    "process '" + spec.processes[t.proc].name +
                        "' unfolds without performing an action",
                    spec.processes[t.proc].span);
      unfolding.push_back(id);
      const ProcDef &def = spec.processes[t.proc];
      Env env;
      for (std::size_t i = 0; i < def.params.size(); ++i)
        env = env.bind(def.params[i].name, t.values[i]);
      try {
        step_node(*def.body, env, out);
      } catch (...) {
        unfolding.pop_back();
        throw;
      }
      unfolding.pop_back();
      break;
    }
    case TermKind::Closure:
      step_node(*t.node, Env::from(fv(*t.node), t.values), out);
      break;
    case TermKind::Par: {
      Successors left = step(t.left);
      Successors right = step(t.right);
      auto par = [&](int l, int r) {
        Term p;
        p.kind = TermKind::Par;
        p.left = l;
        p.right = r;
        return intern(std::move(p));
      };
      for (const auto &[a, l2] : left)
        out.emplace_back(a, par(l2, t.right));
      for (const auto &[b, r2] : right)
        out.emplace_back(b, par(t.left, r2));
      for (const auto &[a, l2] : left)
        for (const auto &[b, r2] : right) {
          std::vector<ActionInstance> both = a.actions();
          both.insert(both.end(), b.actions().begin(), b.actions().end());
          out.emplace_back(MultiAction(std::move(both)), par(l2, r2));
        }
      break;
    }
    case TermKind::Comm: {
      Successors inner = step(t.left);
      for (const auto &[a, target] : inner) {
        Term c;
        c.kind = TermKind::Comm;
        c.node = t.node;
        c.left = target;
        out.emplace_back(apply_comm(a, t.node->comm), intern(std::move(c)));
      }
      break;
    }
    case TermKind::Allow: {
      Successors inner = step(t.left);
      for (const auto &[a, target] : inner) {
        if (!allowed(a, t.node->allow))
          continue;
        Term c;
        c.kind = TermKind::Allow;
        c.node = t.node;
        c.left = target;
        out.emplace_back(a, intern(std::move(c)));
      }
      break;
    }
    }
    std::vector<std::pair<std::pair<std::string, std::string>, std::size_t>> order;
    for (std::size_t i = 0; i < out.size(); ++i)
      order.push_back({{out[i].first.text(), canonical(out[i].second)}, i});
    std::sort(order.begin(), order.end());
    auto result = std::make_unique<Successors>();
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i && order[i].first == order[i - 1].first)
        continue;
      result->push_back(out[order[i].second]);
    }
    memo[id] = std::move(result);
    return *memo[id];
  }

  const std::string &canonical(int id) {
    if (texts[id])
      return *texts[id];
    const Term t = terms[id];
    std::string out;
    switch (t.kind) {
    case TermKind::Deadlock:
      out = "delta";
      break;
    case TermKind::Call: {
      out = spec.processes[t.proc].name;
      if (!t.values.empty()) {
        out += '(';
        for (std::size_t i = 0; i < t.values.size(); ++i)
          out += (i ? ", " : "") + t.values[i].text();
        out += ')';
      }
      break;
    }
    case TermKind::Closure: {
      Env local = Env::from(fv(*t.node), t.values);
      out = unparse(*t.node, &local);
      break;
    }
    case TermKind::Par:
      out = "(" + canonical(t.left) + " || " + canonical(t.right) + ")";
      break;
    case TermKind::Comm:
    case TermKind::Allow: {
      // Render the wrapper around the operand's canonical text.
      std::string head = unparse(*t.node);
      std::string operand = unparse(*t.node->left);
      out = head.substr(0, head.size() - operand.size() - 1) + canonical(t.left) + ")";
      break;
    }
    }
    texts[id] = std::make_unique<std::string>(std::move(out));
    return *texts[id];
  }
};

Semantics::Semantics(const Spec &spec, SemanticsConfig cfg) : impl_(std::make_unique<Impl>(spec, cfg)) {}
Semantics::~Semantics() = default;

Semantics::State Semantics::initial() {
  std::lock_guard guard(impl_->lock);
  if (impl_->init < 0)
    impl_->init = impl_->normalize(*impl_->spec.init, Env{});
  return impl_->init;
}

Semantics::State Semantics::instance(const std::string &name, const std::vector<Value> &args) {
  int proc = impl_->spec.find_process(name);
  if (proc < 0)
    throw Error(ErrorKind::UnknownName, "unknown process '" + name + "'");
  if (impl_->spec.processes[proc].params.size() != args.size())
    throw Error(ErrorKind::Type, "wrong number of arguments for '" + name + "'");
  std::lock_guard guard(impl_->lock);
  return impl_->call_term(proc, args);
}

const Semantics::Successors &Semantics::step(State s) {
  std::lock_guard guard(impl_->lock);
  return impl_->step(s);
}

const std::string &Semantics::canonical(State s) {
  std::lock_guard guard(impl_->lock);
  return impl_->canonical(s);
}

std::size_t Semantics::term_count() const {
  std::lock_guard guard(impl_->lock);
  return impl_->terms.size();
}

} // namespace pmx
