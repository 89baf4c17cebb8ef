#include "pmx/expr.hpp"

#include <algorithm>

namespace pmx {

ExprPtr make_const(Value v, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Const;
  e->value = v;
  e->span = std::move(span);
  e->sort = v.sort();
  return e;
}

ExprPtr make_var(std::string name, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Var;
  e->name = std::move(name);
  e->span = std::move(span);
  return e;
}

ExprPtr make_unary(ExprKind kind, ExprPtr operand, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->args.push_back(std::move(operand));
  e->span = std::move(span);
  return e;
}

ExprPtr make_binary(ExprKind kind, ExprPtr lhs, ExprPtr rhs, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->args.push_back(std::move(lhs));
  e->args.push_back(std::move(rhs));
  e->span = std::move(span);
  return e;
}

ExprPtr make_call(std::string name, std::vector<ExprPtr> args, SourceSpan span) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Call;
  e->name = std::move(name);
  e->args = std::move(args);
  e->span = std::move(span);
  return e;
}

// ---------------------------------------------------------------------------
// Env

Env Env::bind(const std::string &name, Value v) const {
  Env out = *this;
  auto it = std::lower_bound(out.entries_.begin(), out.entries_.end(), name,
                             [](const auto &entry, const std::string &n) { return entry.first < n; });
  if (it != out.entries_.end() && it->first == name)
    it->second = v;
  else
    out.entries_.insert(it, {name, v});
  return out;
}

const Value *Env::find(const std::string &name) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), name,
                             [](const auto &entry, const std::string &n) { return entry.first < n; });
  if (it != entries_.end() && it->first == name)
    return &it->second;
  return nullptr;
}

const Value &Env::lookup(const std::string &name) const {
  if (const Value *v = find(name))
    return *v;
  throw Error(ErrorKind::UnboundVariable, "variable '" + name + "' is not bound");
}

std::vector<Value> Env::project(const std::vector<std::string> &names) const {
  std::vector<Value> out;
  out.reserve(names.size());
  for (const auto &n : names)
    out.push_back(lookup(n));
  return out;
}

Env Env::from(const std::vector<std::string> &names, const std::vector<Value> &values) {
  Env env;
  for (std::size_t i = 0; i < names.size(); ++i)
    env = env.bind(names[i], values[i]);
  return env;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

std::int64_t checked(bool overflowed, std::int64_t r, const Expr &e) {
  if (overflowed)
    throw Error(ErrorKind::Overflow, "arithmetic overflow", e.span);
  return r;
}

Value number(Sort sort, std::int64_t n, const Expr &e) {
  if (sort == Sort::Nat && n < 0)
    throw Error(ErrorKind::Eval, "negative result in a Nat-sorted expression", e.span);
  return sort == Sort::Nat ? Value::nat(n) : Value::integer(n);
}

Sort result_sort(const Expr &e, Sort fallback) { return e.sort.value_or(fallback); }

} // namespace

Value eval(const Expr &e, const Env &env) {
  switch (e.kind) {
  case ExprKind::Const:
    return e.value;
  case ExprKind::Var: {
    const Value *v = env.find(e.name);
    if (!v)
      throw Error(ErrorKind::UnboundVariable, "variable '" + e.name + "' is not bound", e.span);
    return *v;
  }
  case ExprKind::Negate: {
    Value a = eval(*e.args[0], env);
    std::int64_t r = 0;
    bool o = __builtin_sub_overflow(std::int64_t{0}, a.as_int(), &r);
    return Value::integer(checked(o, r, e));
  }
  case ExprKind::Not:
    return Value::boolean(!eval(*e.args[0], env).as_bool());
  case ExprKind::Add:
  case ExprKind::Sub:
  case ExprKind::Mul: {
    std::int64_t a = eval(*e.args[0], env).as_int();
    std::int64_t b = eval(*e.args[1], env).as_int();
    std::int64_t r = 0;
    bool o = e.kind == ExprKind::Add   ? __builtin_add_overflow(a, b, &r)
             : e.kind == ExprKind::Sub ? __builtin_sub_overflow(a, b, &r)
                                       : __builtin_mul_overflow(a, b, &r);
    return number(result_sort(e, Sort::Int), checked(o, r, e), e);
  }
  case ExprKind::Eq:
    return Value::boolean(eval(*e.args[0], env) == eval(*e.args[1], env));
  case ExprKind::Ne:
    return Value::boolean(!(eval(*e.args[0], env) == eval(*e.args[1], env)));
  case ExprKind::Lt:
  case ExprKind::Le:
  case ExprKind::Gt:
  case ExprKind::Ge: {
    std::int64_t a = eval(*e.args[0], env).as_int();
    std::int64_t b = eval(*e.args[1], env).as_int();
    bool r = e.kind == ExprKind::Lt   ? a < b
             : e.kind == ExprKind::Le ? a <= b
             : e.kind == ExprKind::Gt ? a > b
                                      : a >= b;
    return Value::boolean(r);
  }
  case ExprKind::And:
    return Value::boolean(eval(*e.args[0], env).as_bool() && eval(*e.args[1], env).as_bool());
  case ExprKind::Or:
    return Value::boolean(eval(*e.args[0], env).as_bool() || eval(*e.args[1], env).as_bool());
  case ExprKind::Implies:
    return Value::boolean(!eval(*e.args[0], env).as_bool() || eval(*e.args[1], env).as_bool());
  case ExprKind::Int2Nat: {
    Value a = eval(*e.args[0], env);
    if (a.as_int() < 0)
      throw Error(ErrorKind::Eval, "Int2Nat applied to negative value " + a.text(), e.span);
    return Value::nat(a.as_int());
  }
  case ExprKind::Call: {
    if (!e.function)
      throw Error(ErrorKind::UnknownName, "function '" + e.name + "' is not resolved", e.span);
    const FunctionDef &fn = *e.function;
    Env local;
    for (std::size_t i = 0; i < fn.params.size(); ++i)
      local = local.bind(fn.params[i].first, eval(*e.args[i], env).as(fn.params[i].second));
    return eval(*fn.body, local).as(fn.result);
  }
  }
  throw Error(ErrorKind::Eval, "unknown expression kind", e.span);
}

std::vector<Value> enumerate(Sort sort, const QuantifierConfig &cfg) {
  if (sort == Sort::Bool)
    return {Value::boolean(false), Value::boolean(true)};
  if (!cfg.bound)
    throw Error(ErrorKind::UnboundedDomain,
                std::string("enumerating ") + sort_name(sort) + " requires a quantifier bound");
  std::int64_t bound = *cfg.bound;
  std::vector<Value> out;
  if (sort == Sort::Nat) {
    for (std::int64_t i = 0; i <= bound; ++i)
      out.push_back(Value::nat(i));
  } else {
    for (std::int64_t i = -bound; i <= bound; ++i)
      out.push_back(Value::integer(i));
  }
  return out;
}

void collect_free_vars(const Expr &e, std::set<std::string> &out) {
  if (e.kind == ExprKind::Var)
    out.insert(e.name);
  for (const auto &a : e.args)
    collect_free_vars(*a, out);
}

ExprPtr rename_vars(const ExprPtr &e, const std::map<std::string, std::string> &renaming) {
  auto copy = std::make_shared<Expr>(*e);
  if (copy->kind == ExprKind::Var) {
    auto it = renaming.find(copy->name);
    if (it != renaming.end())
      copy->name = it->second;
  }
  for (auto &a : copy->args)
    a = rename_vars(a, renaming);
  return copy;
}

bool same_expr(const Expr &a, const Expr &b) {
  if (a.kind != b.kind || a.args.size() != b.args.size())
    return false;
  if (a.kind == ExprKind::Const && !(a.value == b.value && a.value.sort() == b.value.sort()))
    return false;
  if ((a.kind == ExprKind::Var || a.kind == ExprKind::Call) && a.name != b.name)
    return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!same_expr(*a.args[i], *b.args[i]))
      return false;
  return true;
}

} // namespace pmx
