#include "pmx/normal.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pmx/unparse.hpp"

namespace pmx {

namespace {

ActPtr rename_act(const ActPtr &a, const std::map<std::string, std::string> &renaming) {
  if (renaming.empty())
    return a;
  auto out = std::make_shared<ActionFormula>(*a);
  if (a->kind == ActKind::Match) {
    for (auto &t : out->pattern)
      for (auto &e : t.args)
        e = rename_vars(e, renaming);
    return out;
  }
  std::map<std::string, std::string> inner = renaming;
  if (a->kind == ActKind::Exists)
    inner.erase(a->var);
  for (auto &op : out->operands)
    op = rename_act(op, inner);
  return out;
}

void act_free_vars(const ActionFormula &a, std::set<std::string> &out) {
  if (a.kind == ActKind::Match) {
    for (const auto &t : a.pattern)
      for (const auto &e : t.args)
        collect_free_vars(*e, out);
    return;
  }
  std::set<std::string> inner;
  for (const auto &op : a.operands)
    act_free_vars(*op, inner);
  if (a.kind == ActKind::Exists)
    inner.erase(a.var);
  out.insert(inner.begin(), inner.end());
}

ExprPtr negate(const ExprPtr &e) {
  if (e->kind == ExprKind::Const)
    return make_const(Value::boolean(!e->value.as_bool()), e->span);
  if (e->kind == ExprKind::Not)
    return e->args[0];
  ExprPtr n = make_unary(ExprKind::Not, e, e->span);
  n->sort = Sort::Bool;
  return n;
}

ExprPtr bool_const(bool b, SourceSpan span) {
  ExprPtr e = make_const(Value::boolean(b), span);
  e->sort = Sort::Bool;
  return e;
}

int rank(NfKind k) {
  switch (k) {
  case NfKind::Val:
    return 0;
  case NfKind::Box:
  case NfKind::Diamond:
    return 1;
  default:
    return 2;
  }
}

struct FixScope {
  std::string name;
  bool negated;
  NormalFormula *node;
};

class Normalizer {
public:
  NormalForm run(const StateFormula &f) {
    NfPtr root = norm(f, false);
    // A variable carries its binder's free variables, so nested binders need
    // repeated passes until those sets are stable.
    NormalForm out;
    do {
      changed_ = false;
      out = NormalForm{};
      out.root = root;
      number(root, out, -1, false);
    } while (changed_);
    return out;
  }

private:
  std::vector<FixScope> fix_;
  std::vector<std::string> data_;          // data binders in scope, innermost last
  std::map<std::string, std::string> ren_; // active renamings
  int fresh_ = 0;

  std::string bind_data(const std::string &name) {
    std::string target = name;
    if (std::find(data_.begin(), data_.end(), name) != data_.end() || ren_.count(name)) {
      int k = 1;
      do
        target = name + "#" + std::to_string(k++);
      while (std::find(data_.begin(), data_.end(), target) != data_.end());
    }
    data_.push_back(target);
    return target;
  }

  ExprPtr expr(const ExprPtr &e) { return ren_.empty() ? e : rename_vars(e, ren_); }

  NfPtr node(NfKind kind) {
    auto n = std::make_shared<NormalFormula>();
    n->kind = kind;
    return n;
  }

  NfPtr val(ExprPtr e) {
    NfPtr n = node(NfKind::Val);
    n->expr = std::move(e);
    return n;
  }

  NfPtr junction(NfKind kind, NfPtr a, NfPtr b) {
    NfPtr n = node(kind);
    for (NfPtr *p : {&a, &b}) {
      if ((*p)->kind == kind)
        n->operands.insert(n->operands.end(), (*p)->operands.begin(), (*p)->operands.end());
      else
        n->operands.push_back(*p);
    }
    std::stable_sort(n->operands.begin(), n->operands.end(),
                     [](const NfPtr &x, const NfPtr &y) { return rank(x->kind) < rank(y->kind); });
    return n;
  }

  // A scoped data binder: renames on clash and restores on exit.
  template <class F> NfPtr with_binder(const std::string &name, std::string &target, F body) {
    target = bind_data(name);
    auto saved = ren_;
    if (target != name)
      ren_[name] = target;
    else
      ren_.erase(name);
    NfPtr r = body();
    ren_ = std::move(saved);
    data_.pop_back();
    return r;
  }

  NfPtr modality(bool box, const RegularFormula &r, const StateFormula &body, bool neg, const SourceSpan &span) {
    if (neg)
      box = !box;
    ActPtr act = rename_act(r.action, ren_);
    if (!r.star) {
      NfPtr n = node(box ? NfKind::Box : NfKind::Diamond);
      n->action = act;
      n->operands.push_back(norm(body, neg));
      return n;
    }
    // [A*]phi = nu Z.(phi && [A]Z); <A*>phi = mu Z.(phi || <A>Z)
    NfPtr fix = node(box ? NfKind::Nu : NfKind::Mu);
    fix->name = "Z#" + std::to_string(++fresh_);
    fix_.push_back({fix->name, false, fix.get()});
    NfPtr phi = norm(body, neg);
    fix_.pop_back();
    NfPtr var = node(NfKind::Var);
    var->name = fix->name;
    NfPtr step = node(box ? NfKind::Box : NfKind::Diamond);
    step->action = act;
    step->operands.push_back(var);
    fix->operands.push_back(junction(box ? NfKind::And : NfKind::Or, phi, step));
    (void)span;
    return fix;
  }

  NfPtr norm(const StateFormula &f, bool neg) {
    switch (f.kind) {
    case FormKind::True:
    case FormKind::False:
      return val(bool_const((f.kind == FormKind::True) != neg, f.span));
    case FormKind::Val: {
      ExprPtr e = expr(f.expr);
      return val(neg ? negate(e) : e);
    }
    case FormKind::Not:
      return norm(*f.operands[0], !neg);
    case FormKind::And:
    case FormKind::Or: {
      bool conj = (f.kind == FormKind::And) != neg;
      return junction(conj ? NfKind::And : NfKind::Or, norm(*f.operands[0], neg), norm(*f.operands[1], neg));
    }
    case FormKind::Implies:
      return junction(neg ? NfKind::And : NfKind::Or, norm(*f.operands[0], !neg), norm(*f.operands[1], neg));
    case FormKind::Forall:
    case FormKind::Exists: {
      bool all = (f.kind == FormKind::Forall) != neg;
      NfPtr n = node(all ? NfKind::Forall : NfKind::Exists);
      n->sort = f.sort;
      n->operands.push_back(with_binder(f.name, n->name, [&] { return norm(*f.operands[0], neg); }));
      return n;
    }
    case FormKind::Box:
    case FormKind::Diamond:
      return modality(f.kind == FormKind::Box, f.regular, *f.operands[0], neg, f.span);
    case FormKind::Mu:
    case FormKind::Nu: {
      bool mu = (f.kind == FormKind::Mu) != neg;
      NfPtr n = node(mu ? NfKind::Mu : NfKind::Nu);
      n->name = f.name;
      // Initial values are evaluated outside the binder's own parameters.
      std::vector<ExprPtr> inits;
      for (const auto &p : f.params)
        inits.push_back(expr(p.init));
      auto saved = ren_;
      std::size_t depth = data_.size();
      for (std::size_t i = 0; i < f.params.size(); ++i) {
        std::string target = bind_data(f.params[i].name);
        if (target != f.params[i].name)
          ren_[f.params[i].name] = target;
        else
          ren_.erase(f.params[i].name);
        n->params.push_back({target, f.params[i].sort, inits[i]});
      }
      fix_.push_back({f.name, neg, n.get()});
      n->operands.push_back(norm(*f.operands[0], neg));
      fix_.pop_back();
      data_.resize(depth);
      ren_ = std::move(saved);
      return n;
    }
    case FormKind::Var: {
      auto it = std::find_if(fix_.rbegin(), fix_.rend(), [&](const FixScope &s) { return s.name == f.name; });
      if (it == fix_.rend())
        throw Error(ErrorKind::UnboundFixpointVariable, "fixpoint variable '" + f.name + "' is not bound",
                    f.span);
      if (it->negated != neg)
        throw Error(ErrorKind::NonMonotoneFixpoint,
                    "fixpoint variable '" + f.name + "' occurs under an odd number of negations", f.span);
      NfPtr n = node(NfKind::Var);
      n->name = f.name;
      for (const auto &a : f.args)
        n->args.push_back(expr(a));
      return n;
    }
    }
    throw Error(ErrorKind::Type, "unexpected formula", f.span);
  }

  // Assigns ids in preorder, links variables to binders, fills free variables and
  // alternation levels.
  std::set<std::string> number(const NfPtr &n, NormalForm &out, int parent_alt, bool parent_mu) {
    n->id = static_cast<int>(out.nodes.size());
    out.nodes.push_back(n.get());
    std::set<std::string> fv;
    switch (n->kind) {
    case NfKind::Val:
      collect_free_vars(*n->expr, fv);
      break;
    case NfKind::And:
    case NfKind::Or:
      for (const auto &op : n->operands) {
        auto s = number(op, out, parent_alt, parent_mu);
        fv.insert(s.begin(), s.end());
      }
      break;
    case NfKind::Forall:
    case NfKind::Exists:
      fv = number(n->operands[0], out, parent_alt, parent_mu);
      fv.erase(n->name);
      break;
    case NfKind::Box:
    case NfKind::Diamond:
      act_free_vars(*n->action, fv);
      {
        auto s = number(n->operands[0], out, parent_alt, parent_mu);
        fv.insert(s.begin(), s.end());
      }
      break;
    case NfKind::Mu:
    case NfKind::Nu: {
      bool mu = n->kind == NfKind::Mu;
      n->alternation = parent_alt < 0 ? 0 : parent_alt + (mu != parent_mu ? 1 : 0);
      out.alternation_levels = std::max(out.alternation_levels, n->alternation + 1);
      binders_.push_back(n.get());
      fv = number(n->operands[0], out, n->alternation, mu);
      binders_.pop_back();
      for (const auto &p : n->params)
        fv.erase(p.name);
      {
        std::vector<std::string> closure(fv.begin(), fv.end());
        if (closure_[n.get()] != closure) {
          closure_[n.get()] = closure;
          changed_ = true;
        }
      }
      for (const auto &p : n->params)
        collect_free_vars(*p.init, fv);
      break;
    }
    case NfKind::Var: {
      auto it = std::find_if(binders_.rbegin(), binders_.rend(),
                             [&](const NormalFormula *b) { return b->name == n->name; });
      n->binder = (*it)->id;
      const auto &closure = closure_[*it];
      fv.insert(closure.begin(), closure.end());
      for (const auto &a : n->args)
        collect_free_vars(*a, fv);
      break;
    }
    }
    n->free.assign(fv.begin(), fv.end());
    return fv;
  }

  std::vector<NormalFormula *> binders_;
  std::map<const NormalFormula *, std::vector<std::string>> closure_; // binder -> free variables
  bool changed_ = false;
};

} // namespace

NormalForm normalize(const StateFormula &f) { return Normalizer().run(f); }

std::string unparse(const NormalFormula &f) {
  auto sub = [&](std::size_t i) { return unparse(*f.operands[i]); };
  switch (f.kind) {
  case NfKind::Val:
    if (f.expr->kind == ExprKind::Const)
      return f.expr->value.text();
    return "val(" + unparse(*f.expr) + ")";
  case NfKind::And:
  case NfKind::Or: {
    std::string out = "(";
    for (std::size_t i = 0; i < f.operands.size(); ++i)
      out += (i ? (f.kind == NfKind::And ? " && " : " || ") : "") + sub(i);
    return out + ")";
  }
  case NfKind::Forall:
  case NfKind::Exists:
    return std::string("(") + (f.kind == NfKind::Forall ? "forall " : "exists ") + f.name + ":" +
           sort_name(f.sort) + ". " + sub(0) + ")";
  case NfKind::Box:
    return "([" + unparse(*f.action) + "]" + sub(0) + ")";
  case NfKind::Diamond:
    return "(<" + unparse(*f.action) + ">" + sub(0) + ")";
  case NfKind::Mu:
  case NfKind::Nu: {
    std::string out = std::string("(") + (f.kind == NfKind::Mu ? "mu " : "nu ") + f.name;
    if (!f.params.empty()) {
      out += "(";
      for (std::size_t i = 0; i < f.params.size(); ++i)
        out += (i ? ", " : "") + f.params[i].name + ":" + sort_name(f.params[i].sort) + " = " +
               unparse(*f.params[i].init);
      out += ")";
    }
    return out + ". " + sub(0) + ")";
  }
  case NfKind::Var: {
    std::string out = f.name;
    if (!f.args.empty()) {
      out += "(";
      for (std::size_t i = 0; i < f.args.size(); ++i)
        out += (i ? ", " : "") + unparse(*f.args[i]);
      out += ")";
    }
    return out;
  }
  }
  return {};
}

} // namespace pmx
