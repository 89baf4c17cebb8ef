#include "pmx/ast.hpp"

namespace pmx {

ProcPtr make_proc(ProcKind kind, SourceSpan span) {
  auto p = std::make_shared<ProcExpr>();
  p->kind = kind;
  p->span = std::move(span);
  return p;
}

ActPtr make_act(ActKind kind, SourceSpan span) {
  auto a = std::make_shared<ActionFormula>();
  a->kind = kind;
  a->span = std::move(span);
  return a;
}

FormPtr make_form(FormKind kind, SourceSpan span) {
  auto f = std::make_shared<StateFormula>();
  f->kind = kind;
  f->span = std::move(span);
  return f;
}

const ActionDecl *Spec::find_action(const std::string &name) const {
  for (const auto &a : actions)
    if (a.name == name)
      return &a;
  return nullptr;
}

const FunctionDef *Spec::find_function(const std::string &name) const {
  for (const auto &f : functions)
    if (f->name == name)
      return f.get();
  return nullptr;
}

int Spec::find_process(const std::string &name) const {
  for (std::size_t i = 0; i < processes.size(); ++i)
    if (processes[i].name == name)
      return static_cast<int>(i);
  return -1;
}

namespace {

bool same_exprs(const std::vector<ExprPtr> &a, const std::vector<ExprPtr> &b) {
  if (a.size() != b.size())
    return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_expr(*a[i], *b[i]))
      return false;
  return true;
}

bool same_terms(const std::vector<ActionTerm> &a, const std::vector<ActionTerm> &b) {
  if (a.size() != b.size())
    return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].name != b[i].name || !same_exprs(a[i].args, b[i].args))
      return false;
  return true;
}

template <class T, class F>
bool same_ptr(const std::shared_ptr<T> &a, const std::shared_ptr<T> &b, F &&same) {
  if (!a || !b)
    return !a && !b;
  return same(*a, *b);
}

} // namespace

bool same_proc(const ProcExpr &a, const ProcExpr &b) {
  if (a.kind != b.kind)
    return false;
  switch (a.kind) {
  case ProcKind::Prefix:
    return same_terms(a.actions, b.actions) && same_ptr(a.left, b.left, same_proc);
  case ProcKind::Choice:
  case ProcKind::Parallel:
    return same_ptr(a.left, b.left, same_proc) && same_ptr(a.right, b.right, same_proc);
  case ProcKind::Sum:
    return a.name == b.name && a.sort == b.sort && same_ptr(a.left, b.left, same_proc);
  case ProcKind::IfThenElse:
    return same_expr(*a.cond, *b.cond) && same_ptr(a.left, b.left, same_proc) &&
           same_ptr(a.right, b.right, same_proc);
  case ProcKind::Call:
    return a.name == b.name && same_exprs(a.args, b.args);
  case ProcKind::Comm:
    if (a.comm.size() != b.comm.size())
      return false;
    for (std::size_t i = 0; i < a.comm.size(); ++i)
      if (a.comm[i].send != b.comm[i].send || a.comm[i].receive != b.comm[i].receive ||
          a.comm[i].result != b.comm[i].result)
        return false;
    return same_ptr(a.left, b.left, same_proc);
  case ProcKind::Allow:
    return a.allow == b.allow && same_ptr(a.left, b.left, same_proc);
  case ProcKind::Deadlock:
    return true;
  }
  return false;
}

bool same_spec(const Spec &a, const Spec &b) {
  if (a.sorts.size() != b.sorts.size() || a.actions.size() != b.actions.size() ||
      a.functions.size() != b.functions.size() || a.processes.size() != b.processes.size())
    return false;
  for (std::size_t i = 0; i < a.sorts.size(); ++i)
    if (a.sorts[i].name != b.sorts[i].name || a.sorts[i].sort != b.sorts[i].sort)
      return false;
  for (std::size_t i = 0; i < a.actions.size(); ++i)
    if (a.actions[i].name != b.actions[i].name || a.actions[i].params != b.actions[i].params)
      return false;
  for (std::size_t i = 0; i < a.functions.size(); ++i) {
    const auto &f = *a.functions[i];
    const auto &g = *b.functions[i];
    if (f.name != g.name || f.params != g.params || f.result != g.result ||
        !same_expr(*f.body, *g.body))
      return false;
  }
  for (std::size_t i = 0; i < a.processes.size(); ++i) {
    const auto &p = a.processes[i];
    const auto &q = b.processes[i];
    if (p.name != q.name || p.params.size() != q.params.size())
      return false;
    for (std::size_t k = 0; k < p.params.size(); ++k)
      if (p.params[k].name != q.params[k].name || p.params[k].sort != q.params[k].sort)
        return false;
    if (!same_proc(*p.body, *q.body))
      return false;
  }
  return same_ptr(a.init, b.init, same_proc);
}

bool same_act(const ActionFormula &a, const ActionFormula &b) {
  if (a.kind != b.kind || a.operands.size() != b.operands.size())
    return false;
  if (a.kind == ActKind::Match && !same_terms(a.pattern, b.pattern))
    return false;
  if (a.kind == ActKind::Exists && (a.var != b.var || a.sort != b.sort))
    return false;
  for (std::size_t i = 0; i < a.operands.size(); ++i)
    if (!same_act(*a.operands[i], *b.operands[i]))
      return false;
  return true;
}

bool same_formula(const StateFormula &a, const StateFormula &b) {
  if (a.kind != b.kind || a.operands.size() != b.operands.size())
    return false;
  switch (a.kind) {
  case FormKind::Val:
    if (!same_expr(*a.expr, *b.expr))
      return false;
    break;
  case FormKind::Forall:
  case FormKind::Exists:
    if (a.name != b.name || a.sort != b.sort)
      return false;
    break;
  case FormKind::Box:
  case FormKind::Diamond:
    if (a.regular.star != b.regular.star || !same_act(*a.regular.action, *b.regular.action))
      return false;
    break;
  case FormKind::Mu:
  case FormKind::Nu:
    if (a.name != b.name || a.params.size() != b.params.size())
      return false;
    for (std::size_t i = 0; i < a.params.size(); ++i)
      if (a.params[i].name != b.params[i].name || a.params[i].sort != b.params[i].sort ||
          !same_expr(*a.params[i].init, *b.params[i].init))
        return false;
    break;
  case FormKind::Var:
    if (a.name != b.name || !same_exprs(a.args, b.args))
      return false;
    break;
  default:
    break;
  }
  for (std::size_t i = 0; i < a.operands.size(); ++i)
    if (!same_formula(*a.operands[i], *b.operands[i]))
      return false;
  return true;
}

} // namespace pmx
