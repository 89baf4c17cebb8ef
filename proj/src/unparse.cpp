#include "pmx/unparse.hpp"

namespace pmx {

namespace {

const char *binary_op(ExprKind k) {
  switch (k) {
  case ExprKind::Add: return " + ";
  case ExprKind::Sub: return " - ";
  case ExprKind::Mul: return " * ";
  case ExprKind::Eq: return " == ";
  case ExprKind::Ne: return " != ";
  case ExprKind::Lt: return " < ";
  case ExprKind::Le: return " <= ";
  case ExprKind::Gt: return " > ";
  case ExprKind::Ge: return " >= ";
  case ExprKind::And: return " && ";
  case ExprKind::Or: return " || ";
  case ExprKind::Implies: return " => ";
  default: return nullptr;
  }
}

template <class Range, class F> std::string join(const Range &items, const char *sep, F &&render) {
  std::string out;
  bool first = true;
  for (const auto &item : items) {
    if (!first)
      out += sep;
    first = false;
    out += render(item);
  }
  return out;
}

std::string args_text(const std::vector<ExprPtr> &args, const Env *subst) {
  return join(args, ", ", [&](const ExprPtr &e) { return unparse(*e, subst); });
}

std::string terms_text(const std::vector<ActionTerm> &terms, const Env *subst) {
  return join(terms, "|", [&](const ActionTerm &t) {
    return t.args.empty() ? t.name : t.name + "(" + args_text(t.args, subst) + ")";
  });
}

} // namespace

std::string unparse(const Expr &e, const Env *subst) {
  switch (e.kind) {
  case ExprKind::Const:
    return e.value.text();
  case ExprKind::Var:
    if (subst)
      if (const Value *v = subst->find(e.name))
        return v->text();
    return e.name;
  case ExprKind::Negate:
    return "(-" + unparse(*e.args[0], subst) + ")";
  case ExprKind::Not:
    return "(!" + unparse(*e.args[0], subst) + ")";
  case ExprKind::Int2Nat:
    return "Int2Nat(" + unparse(*e.args[0], subst) + ")";
  case ExprKind::Call:
    return e.args.empty() ? e.name : e.name + "(" + args_text(e.args, subst) + ")";
  default:
    return "(" + unparse(*e.args[0], subst) + binary_op(e.kind) + unparse(*e.args[1], subst) + ")";
  }
}

std::string unparse(const ProcExpr &p, const Env *subst) {
  switch (p.kind) {
  case ProcKind::Prefix:
    return "(" + terms_text(p.actions, subst) + " . " + unparse(*p.left, subst) + ")";
  case ProcKind::Choice:
    return "(" + unparse(*p.left, subst) + " + " + unparse(*p.right, subst) + ")";
  case ProcKind::Parallel:
    return "(" + unparse(*p.left, subst) + " || " + unparse(*p.right, subst) + ")";
  case ProcKind::Sum: {
    std::string body;
    if (subst && subst->contains(p.name)) {
      // The binder shadows the substituted variable.
      Env inner;
      for (const auto &[n, v] : subst->entries())
        if (n != p.name)
          inner = inner.bind(n, v);
      body = unparse(*p.left, &inner);
    } else {
      body = unparse(*p.left, subst);
    }
    return "(sum " + p.name + ":" + sort_name(p.sort) + ". " + body + ")";
  }
  case ProcKind::IfThenElse:
    return "(" + unparse(*p.cond, subst) + " -> " + unparse(*p.left, subst) + " <> " +
           unparse(*p.right, subst) + ")";
  case ProcKind::Call:
    return p.args.empty() ? p.name : p.name + "(" + args_text(p.args, subst) + ")";
  case ProcKind::Comm:
    return "comm({" + join(p.comm, ", ", [](const CommRule &r) {
             return r.send + "|" + r.receive + " -> " + r.result;
           }) + "}, " + unparse(*p.left, subst) + ")";
  case ProcKind::Allow:
    return "allow({" + join(p.allow, ", ", [](const std::vector<std::string> &names) {
             return join(names, "|", [](const std::string &n) { return n; });
           }) + "}, " + unparse(*p.left, subst) + ")";
  case ProcKind::Deadlock:
    return "delta";
  }
  return "?";
}

std::string unparse(const Spec &s) {
  std::string out;
  for (const auto &a : s.sorts)
    out += "sort " + a.name + " = " + sort_name(a.sort) + ";\n";
  for (const auto &a : s.actions) {
    out += "act " + a.name;
    if (!a.params.empty())
      out += ": " + join(a.params, " # ", [](Sort x) { return std::string(sort_name(x)); });
    out += ";\n";
  }
  for (const auto &f : s.functions) {
    out += "map " + f->name + ": ";
    if (!f->params.empty())
      out += join(f->params, " # ", [](const auto &p) { return std::string(sort_name(p.second)); }) +
             " -> ";
    out += std::string(sort_name(f->result)) + ";\n";
  }
  for (const auto &f : s.functions) {
    out += "eqn " + f->name;
    if (!f->params.empty())
      out += "(" + join(f->params, ", ", [](const auto &p) { return p.first; }) + ")";
    out += " = " + unparse(*f->body) + ";\n";
  }
  for (const auto &p : s.processes) {
    out += "proc " + p.name;
    if (!p.params.empty())
      out += "(" + join(p.params, ", ", [](const ProcParam &q) {
               return q.name + ":" + sort_name(q.sort);
             }) + ")";
    out += " = " + unparse(*p.body) + ";\n";
  }
  out += "init " + unparse(*s.init) + ";\n";
  return out;
}

std::string unparse(const ActionFormula &a) {
  switch (a.kind) {
  case ActKind::Any:
    return "true";
  case ActKind::Match:
    return terms_text(a.pattern, nullptr);
  case ActKind::Not:
    return "(!" + unparse(*a.operands[0]) + ")";
  case ActKind::And:
    return "(" + unparse(*a.operands[0]) + " && " + unparse(*a.operands[1]) + ")";
  case ActKind::Or:
    return "(" + unparse(*a.operands[0]) + " || " + unparse(*a.operands[1]) + ")";
  case ActKind::Exists:
    return "(exists " + a.var + ":" + sort_name(a.sort) + ". " + unparse(*a.operands[0]) + ")";
  }
  return "?";
}

std::string unparse(const RegularFormula &r) {
  return unparse(*r.action) + (r.star ? "*" : "");
}

std::string unparse(const StateFormula &f) {
  auto op = [&](std::size_t i) { return unparse(*f.operands[i]); };
  switch (f.kind) {
  case FormKind::True: return "true";
  case FormKind::False: return "false";
  case FormKind::And: return "(" + op(0) + " && " + op(1) + ")";
  case FormKind::Or: return "(" + op(0) + " || " + op(1) + ")";
  case FormKind::Implies: return "(" + op(0) + " => " + op(1) + ")";
  case FormKind::Not: return "(!" + op(0) + ")";
  case FormKind::Val: return "val(" + unparse(*f.expr) + ")";
  case FormKind::Forall:
  case FormKind::Exists:
    return std::string("(") + (f.kind == FormKind::Forall ? "forall " : "exists ") + f.name + ":" +
           sort_name(f.sort) + ". " + op(0) + ")";
  case FormKind::Box: return "([" + unparse(f.regular) + "]" + op(0) + ")";
  case FormKind::Diamond: return "(<" + unparse(f.regular) + ">" + op(0) + ")";
  case FormKind::Mu:
  case FormKind::Nu: {
    std::string out = std::string("(") + (f.kind == FormKind::Mu ? "mu " : "nu ") + f.name;
    if (!f.params.empty())
      out += "(" + join(f.params, ", ", [](const FixParam &p) {
               return p.name + ":" + sort_name(p.sort) + " = " + unparse(*p.init);
             }) + ")";
    return out + ". " + op(0) + ")";
  }
  case FormKind::Var:
    return f.args.empty() ? f.name : f.name + "(" + args_text(f.args, nullptr) + ")";
  }
  return "?";
}

} // namespace pmx
