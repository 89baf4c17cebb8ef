#include "pmx/typecheck.hpp"

#include <functional>
#include <set>

namespace pmx {

namespace {

bool numeric(Sort s) { return s != Sort::Bool; }

[[noreturn]] void type_error(const std::string &msg, const SourceSpan &span) {
  throw Error(ErrorKind::Type, msg, span);
}

void require(Sort actual, Sort wanted, const Expr &e, const std::string &what) {
  if (!assignable(actual, wanted))
    type_error(what + ": expected " + sort_name(wanted) + ", found " + sort_name(actual), e.span);
}

void require_numeric(Sort s, const Expr &e) {
  if (!numeric(s))
    type_error(std::string("expected a number, found ") + sort_name(s), e.span);
}

} // namespace

Sort typecheck(Expr &e, const SortScope &scope, const Spec *spec) {
  Sort result = Sort::Bool;
  switch (e.kind) {
  case ExprKind::Const:
    result = e.value.sort();
    break;
  case ExprKind::Var: {
    auto it = scope.find(e.name);
    if (it != scope.end()) {
      result = it->second;
      break;
    }
    if (spec) {
      for (const auto &fn : spec->functions) {
        if (fn->name == e.name && fn->params.empty()) {
          e.kind = ExprKind::Call;
          return typecheck(e, scope, spec);
        }
      }
    }
    type_error("unbound variable '" + e.name + "'", e.span);
  }
  case ExprKind::Negate:
    require_numeric(typecheck(*e.args[0], scope, spec), e);
    result = Sort::Int;
    break;
  case ExprKind::Not:
    require(typecheck(*e.args[0], scope, spec), Sort::Bool, e, "operand of '!'");
    result = Sort::Bool;
    break;
  case ExprKind::Add:
  case ExprKind::Mul: {
    Sort a = typecheck(*e.args[0], scope, spec);
    Sort b = typecheck(*e.args[1], scope, spec);
    require_numeric(a, *e.args[0]);
    require_numeric(b, *e.args[1]);
    result = (a == Sort::Nat && b == Sort::Nat) ? Sort::Nat : Sort::Int;
    break;
  }
  case ExprKind::Sub:
    require_numeric(typecheck(*e.args[0], scope, spec), *e.args[0]);
    require_numeric(typecheck(*e.args[1], scope, spec), *e.args[1]);
    result = Sort::Int;
    break;
  case ExprKind::Eq:
  case ExprKind::Ne: {
    Sort a = typecheck(*e.args[0], scope, spec);
    Sort b = typecheck(*e.args[1], scope, spec);
    if (numeric(a) != numeric(b))
      type_error(std::string("cannot compare ") + sort_name(a) + " with " + sort_name(b), e.span);
    result = Sort::Bool;
    break;
  }
  case ExprKind::Lt:
  case ExprKind::Le:
  case ExprKind::Gt:
  case ExprKind::Ge:
    require_numeric(typecheck(*e.args[0], scope, spec), *e.args[0]);
    require_numeric(typecheck(*e.args[1], scope, spec), *e.args[1]);
    result = Sort::Bool;
    break;
  case ExprKind::And:
  case ExprKind::Or:
  case ExprKind::Implies:
    require(typecheck(*e.args[0], scope, spec), Sort::Bool, *e.args[0], "boolean operand");
    require(typecheck(*e.args[1], scope, spec), Sort::Bool, *e.args[1], "boolean operand");
    result = Sort::Bool;
    break;
  case ExprKind::Int2Nat:
    require_numeric(typecheck(*e.args[0], scope, spec), *e.args[0]);
    result = Sort::Nat;
    break;
  case ExprKind::Call: {
    std::shared_ptr<FunctionDef> fn;
    if (spec)
      for (const auto &f : spec->functions)
        if (f->name == e.name)
          fn = f;
    if (!fn)
      type_error("unknown function '" + e.name + "'", e.span);
    if (fn->params.size() != e.args.size())
      type_error("'" + e.name + "' expects " + std::to_string(fn->params.size()) + " arguments",
                 e.span);
    for (std::size_t i = 0; i < e.args.size(); ++i)
      require(typecheck(*e.args[i], scope, spec), fn->params[i].second, *e.args[i],
              "argument " + std::to_string(i + 1) + " of '" + e.name + "'");
    e.function = fn;
    result = fn->result;
    break;
  }
  }
  e.sort = result;
  return result;
}

namespace {

void collect_calls(const Expr &e, std::set<std::string> &out) {
  if (e.kind == ExprKind::Call)
    out.insert(e.name);
  for (const auto &a : e.args)
    collect_calls(*a, out);
}

void check_acyclic(const Spec &spec) {
  // Depth-first search over the call graph of equations.
  std::map<std::string, int> state; // 1 = on stack, 2 = done
  std::function<void(const FunctionDef &)> visit = [&](const FunctionDef &fn) {
    state[fn.name] = 1;
    std::set<std::string> callees;
    collect_calls(*fn.body, callees);
    for (const auto &c : callees) {
      const FunctionDef *g = spec.find_function(c);
      if (!g)
        continue;
      if (state[c] == 1)
        throw Error(ErrorKind::Type, "recursive equation for '" + c + "' is not supported", fn.span);
      if (state[c] == 0)
        visit(*g);
    }
    state[fn.name] = 2;
  };
  for (const auto &fn : spec.functions)
    if (state[fn->name] == 0)
      visit(*fn);
}

void check_actions(const std::vector<ActionTerm> &terms, const SortScope &scope, const Spec &spec) {
  for (const auto &t : terms) {
    const ActionDecl *decl = spec.find_action(t.name);
    if (!decl)
      throw Error(ErrorKind::UnknownName, "'" + t.name + "' is not a declared action", t.span);
    if (decl->params.size() != t.args.size())
      type_error("action '" + t.name + "' expects " + std::to_string(decl->params.size()) +
                     " arguments",
                 t.span);
    for (std::size_t i = 0; i < t.args.size(); ++i)
      require(typecheck(*t.args[i], scope, &spec), decl->params[i], *t.args[i],
              "argument " + std::to_string(i + 1) + " of '" + t.name + "'");
  }
}

struct ProcChecker {
  Spec &spec;
  const ProcDef *current = nullptr;

  void check(ProcExpr &p, const SortScope &scope) {
    switch (p.kind) {
    case ProcKind::Prefix:
      check_actions(p.actions, scope, spec);
      check(*p.left, scope);
      break;
    case ProcKind::Choice:
    case ProcKind::Parallel:
      check(*p.left, scope);
      check(*p.right, scope);
      break;
    case ProcKind::Sum: {
      SortScope inner = scope;
      inner[p.name] = p.sort;
      check(*p.left, inner);
      break;
    }
    case ProcKind::IfThenElse:
      if (typecheck(*p.cond, scope, &spec) != Sort::Bool)
        type_error("condition must be Bool", p.cond->span);
      check(*p.left, scope);
      check(*p.right, scope);
      break;
    case ProcKind::Call: {
      int idx = spec.find_process(p.name);
      if (idx < 0)
        throw Error(ErrorKind::UnknownName, "unknown process '" + p.name + "'", p.span);
      p.proc_index = idx;
      const ProcDef &def = spec.processes[idx];
      if (p.args.empty() && !def.params.empty()) {
        if (current != &def)
          type_error("'" + p.name + "()' keeps parameters unchanged and is only allowed inside '" +
                         p.name + "'",
                     p.span);
        for (const auto &param : def.params)
          p.args.push_back(make_var(param.name, p.span));
      }
      if (p.args.size() != def.params.size())
        type_error("process '" + p.name + "' expects " + std::to_string(def.params.size()) +
                       " arguments",
                   p.span);
      for (std::size_t i = 0; i < p.args.size(); ++i)
        require(typecheck(*p.args[i], scope, &spec), def.params[i].sort, *p.args[i],
                "argument " + std::to_string(i + 1) + " of '" + p.name + "'");
      break;
    }
    case ProcKind::Comm:
      for (const auto &r : p.comm) {
        const ActionDecl *s = spec.find_action(r.send);
        const ActionDecl *q = spec.find_action(r.receive);
        const ActionDecl *o = spec.find_action(r.result);
        if (!s || !q || !o)
          throw Error(ErrorKind::UnknownName, "undeclared action in communication", r.span);
        if (s->params != q->params || s->params != o->params)
          type_error("actions in '" + r.send + "|" + r.receive + " -> " + r.result +
                         "' have different parameter sorts",
                     r.span);
      }
      check(*p.left, scope);
      break;
    case ProcKind::Allow:
      check(*p.left, scope);
      break;
    case ProcKind::Deadlock:
      break;
    }
  }
};

void check_act(ActionFormula &a, const SortScope &scope, const Spec &spec) {
  switch (a.kind) {
  case ActKind::Any:
    break;
  case ActKind::Match:
    check_actions(a.pattern, scope, spec);
    break;
  case ActKind::Exists: {
    SortScope inner = scope;
    inner[a.var] = a.sort;
    check_act(*a.operands[0], inner, spec);
    break;
  }
  default:
    for (auto &op : a.operands)
      check_act(*op, scope, spec);
  }
}

struct FormChecker {
  const Spec &spec;
  std::vector<const StateFormula *> fixpoints;

  void check(StateFormula &f, const SortScope &scope) {
    switch (f.kind) {
    case FormKind::Val:
      if (typecheck(*f.expr, scope, &spec) != Sort::Bool)
        type_error("val(...) needs a Bool expression", f.expr->span);
      break;
    case FormKind::Forall:
    case FormKind::Exists: {
      SortScope inner = scope;
      inner[f.name] = f.sort;
      check(*f.operands[0], inner);
      break;
    }
    case FormKind::Box:
    case FormKind::Diamond:
      check_act(*f.regular.action, scope, spec);
      check(*f.operands[0], scope);
      break;
    case FormKind::Mu:
    case FormKind::Nu: {
      SortScope inner = scope;
      for (auto &p : f.params) {
        require(typecheck(*p.init, scope, &spec), p.sort, *p.init, "initial value of '" + p.name + "'");
        inner[p.name] = p.sort;
      }
      fixpoints.push_back(&f);
      check(*f.operands[0], inner);
      fixpoints.pop_back();
      break;
    }
    case FormKind::Var: {
      const StateFormula *binder = nullptr;
      for (auto it = fixpoints.rbegin(); it != fixpoints.rend(); ++it)
        if ((*it)->name == f.name) {
          binder = *it;
          break;
        }
      if (!binder)
        throw Error(ErrorKind::UnboundFixpointVariable, "'" + f.name + "' is not bound", f.span);
      if (binder->params.size() != f.args.size())
        type_error("'" + f.name + "' expects " + std::to_string(binder->params.size()) +
                       " arguments",
                   f.span);
      for (std::size_t i = 0; i < f.args.size(); ++i)
        require(typecheck(*f.args[i], scope, &spec), binder->params[i].sort, *f.args[i],
                "argument " + std::to_string(i + 1) + " of '" + f.name + "'");
      break;
    }
    default:
      for (auto &op : f.operands)
        check(*op, scope);
    }
  }
};

} // namespace

void typecheck(Spec &spec) {
  for (const auto &fn : spec.functions) {
    SortScope scope;
    for (const auto &[name, sort] : fn->params)
      scope[name] = sort;
    require(typecheck(*fn->body, scope, &spec), fn->result, *fn->body,
            "result of '" + fn->name + "'");
  }
  check_acyclic(spec);
  ProcChecker checker{spec};
  for (auto &def : spec.processes) {
    SortScope scope;
    for (const auto &p : def.params)
      scope[p.name] = p.sort;
    checker.current = &def;
    checker.check(*def.body, scope);
  }
  checker.current = nullptr;
  checker.check(*spec.init, {});
}

void typecheck(StateFormula &f, const Spec &spec) {
  FormChecker checker{spec, {}};
  checker.check(f, {});
}

} // namespace pmx
