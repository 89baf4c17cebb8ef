#include "pmx/parser.hpp"

#include <algorithm>
#include <set>

#include "lexer.hpp"

namespace pmx {

using detail::Tok;
using detail::Token;

namespace {

const std::set<std::string> kKeywords = {
    "sort", "act",  "map",   "var",    "eqn",    "proc", "init", "sum", "delta", "allow",
    "comm", "true", "false", "mu",     "nu",     "forall", "exists", "val", "Int2Nat",
};

const std::set<std::string> kSectionKeywords = {"sort", "act", "map", "var", "eqn", "proc", "init"};

class Parser {
public:
  Parser(std::string_view text, const ParseOptions &options)
      : tokens_(detail::lex(text, options.file)), options_(options) {}

  Spec spec();
  FormPtr formula_file();
  ExprPtr expr_file();

private:
  // -- token helpers -------------------------------------------------------
  const Token &peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool at(Tok t) const { return peek().kind == t; }
  bool at_word(const char *w) const { return at(Tok::Ident) && peek().text == w; }
  const Token &next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok t) {
    if (!at(t))
      return false;
    next();
    return true;
  }
  bool accept_word(const char *w) {
    if (!at_word(w))
      return false;
    next();
    return true;
  }

  [[noreturn]] void fail(std::vector<std::string> expected, const std::string &what = {}) const {
    const Token &t = peek();
    std::string found = t.kind == Tok::End ? std::string("end of input") : "'" + t.text + "'";
    throw Error(ErrorKind::Parse, what.empty() ? "unexpected " + found : what, t.span,
                std::move(expected));
  }

  const Token &expect(Tok t) {
    if (!at(t))
      fail({detail::tok_name(t)});
    return next();
  }
  void expect_word(const char *w) {
    if (!at_word(w))
      fail({std::string("'") + w + "'"});
    next();
  }
  std::string identifier() {
    if (!at(Tok::Ident) || kKeywords.count(peek().text))
      fail({"identifier"});
    return next().text;
  }

  // -- data ----------------------------------------------------------------
  Sort sort_ref();
  ExprPtr dexpr();
  ExprPtr d_implies();
  ExprPtr d_or();
  ExprPtr d_and();
  ExprPtr d_eq();
  ExprPtr d_rel();
  ExprPtr d_add();
  ExprPtr d_mul();
  ExprPtr d_unary();
  ExprPtr d_primary();
  std::vector<ExprPtr> call_args();

  // -- spec ----------------------------------------------------------------
  void sort_section(Spec &s);
  void act_section(Spec &s);
  void map_section(Spec &s);
  void eqn_section(Spec &s);
  void proc_section(Spec &s);
  bool at_item() const { return at(Tok::Ident) && !kSectionKeywords.count(peek().text); }

  ProcPtr proc();
  ProcPtr proc_par();
  ProcPtr proc_cond();
  ProcPtr proc_seq();
  ProcPtr proc_primary();
  std::vector<ActionTerm> multi_action();
  ActionTerm action_term();

  // -- formulas ------------------------------------------------------------
  FormPtr sf();
  FormPtr sf_implies();
  FormPtr sf_or();
  FormPtr sf_and();
  FormPtr sf_unary();
  FormPtr sf_primary();
  FormPtr quantifier(FormKind kind);
  FormPtr fixpoint(FormKind kind);
  RegularFormula regular();
  ActPtr af();
  ActPtr af_or();
  ActPtr af_and();
  ActPtr af_unary();
  ActPtr af_primary();

  std::vector<std::pair<std::string, Sort>> binders();

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const ParseOptions &options_;
  std::vector<std::pair<std::string, std::size_t>> fixpoint_scope_; // name, arity
  std::map<std::string, Sort> aliases_;
};

// ---------------------------------------------------------------------------
// Data expressions

Sort Parser::sort_ref() {
  if (!at(Tok::Ident))
    fail({"sort"});
  const Token &t = peek();
  if (auto s = sort_from_name(t.text)) {
    next();
    return *s;
  }
  auto it = aliases_.find(t.text);
  if (it == aliases_.end())
    throw Error(ErrorKind::UnknownName, "unknown sort '" + t.text + "'", t.span);
  next();
  return it->second;
}

ExprPtr Parser::dexpr() { return d_implies(); }

ExprPtr Parser::d_implies() {
  ExprPtr lhs = d_or();
  if (at(Tok::Implies)) {
    SourceSpan span = next().span;
    return make_binary(ExprKind::Implies, lhs, d_implies(), span);
  }
  return lhs;
}

ExprPtr Parser::d_or() {
  ExprPtr lhs = d_and();
  while (at(Tok::OrOr)) {
    SourceSpan span = next().span;
    lhs = make_binary(ExprKind::Or, lhs, d_and(), span);
  }
  return lhs;
}

ExprPtr Parser::d_and() {
  ExprPtr lhs = d_eq();
  while (at(Tok::AndAnd)) {
    SourceSpan span = next().span;
    lhs = make_binary(ExprKind::And, lhs, d_eq(), span);
  }
  return lhs;
}

ExprPtr Parser::d_eq() {
  ExprPtr lhs = d_rel();
  while (at(Tok::EqEq) || at(Tok::NotEq)) {
    const Token &op = next();
    lhs = make_binary(op.kind == Tok::EqEq ? ExprKind::Eq : ExprKind::Ne, lhs, d_rel(), op.span);
  }
  return lhs;
}

ExprPtr Parser::d_rel() {
  ExprPtr lhs = d_add();
  ExprKind kind;
  switch (peek().kind) {
  case Tok::Lt: kind = ExprKind::Lt; break;
  case Tok::Le: kind = ExprKind::Le; break;
  case Tok::Gt: kind = ExprKind::Gt; break;
  case Tok::Ge: kind = ExprKind::Ge; break;
  default: return lhs;
  }
  SourceSpan span = next().span;
  return make_binary(kind, lhs, d_add(), span);
}

ExprPtr Parser::d_add() {
  ExprPtr lhs = d_mul();
  while (at(Tok::Plus) || at(Tok::Minus)) {
    const Token &op = next();
    lhs = make_binary(op.kind == Tok::Plus ? ExprKind::Add : ExprKind::Sub, lhs, d_mul(), op.span);
  }
  return lhs;
}

ExprPtr Parser::d_mul() {
  ExprPtr lhs = d_unary();
  while (at(Tok::Star)) {
    SourceSpan span = next().span;
    lhs = make_binary(ExprKind::Mul, lhs, d_unary(), span);
  }
  return lhs;
}

ExprPtr Parser::d_unary() {
  if (at(Tok::Bang)) {
    SourceSpan span = next().span;
    return make_unary(ExprKind::Not, d_unary(), span);
  }
  if (at(Tok::Minus)) {
    SourceSpan span = next().span;
    return make_unary(ExprKind::Negate, d_unary(), span);
  }
  return d_primary();
}

std::vector<ExprPtr> Parser::call_args() {
  std::vector<ExprPtr> args;
  expect(Tok::LParen);
  if (accept(Tok::RParen))
    return args;
  do {
    args.push_back(dexpr());
  } while (accept(Tok::Comma));
  expect(Tok::RParen);
  return args;
}

ExprPtr Parser::d_primary() {
  const Token &t = peek();
  if (t.kind == Tok::Number) {
    next();
    try {
      return make_const(Value::nat(std::stoll(t.text)), t.span);
    } catch (const std::out_of_range &) {
      throw Error(ErrorKind::Overflow, "numeric literal out of range", t.span);
    }
  }
  if (t.kind == Tok::LParen) {
    next();
    ExprPtr e = dexpr();
    expect(Tok::RParen);
    return e;
  }
  if (t.kind == Tok::Ident) {
    if (t.text == "true" || t.text == "false") {
      next();
      return make_const(Value::boolean(t.text == "true"), t.span);
    }
    if (t.text == "Int2Nat") {
      next();
      auto args = call_args();
      if (args.size() != 1)
        throw Error(ErrorKind::Parse, "Int2Nat takes exactly one argument", t.span);
      return make_unary(ExprKind::Int2Nat, args[0], t.span);
    }
    if (kKeywords.count(t.text))
      fail({"data expression"});
    next();
    if (at(Tok::LParen))
      return make_call(t.text, call_args(), t.span);
    auto c = options_.constants.find(t.text);
    if (c != options_.constants.end())
      return make_const(c->second, t.span);
    return make_var(t.text, t.span);
  }
  fail({"data expression"});
}

// ---------------------------------------------------------------------------
// Model files

void Parser::sort_section(Spec &s) {
  while (at_item()) {
    SourceSpan span = peek().span;
    std::string name = identifier();
    expect(Tok::Assign);
    Sort sort = sort_ref();
    expect(Tok::Semicolon);
    if (sort_from_name(name) || aliases_.count(name))
      throw Error(ErrorKind::DuplicateDeclaration, "sort '" + name + "' is already declared", span);
    aliases_[name] = sort;
    s.sorts.push_back({name, sort, span});
  }
}

void Parser::act_section(Spec &s) {
  while (at_item()) {
    std::vector<std::pair<std::string, SourceSpan>> names;
    do {
      SourceSpan span = peek().span;
      names.emplace_back(identifier(), span);
    } while (accept(Tok::Comma));
    std::vector<Sort> params;
    if (accept(Tok::Colon)) {
      do {
        params.push_back(sort_ref());
      } while (accept(Tok::Hash));
    }
    expect(Tok::Semicolon);
    for (auto &[name, span] : names) {
      if (s.find_action(name))
        throw Error(ErrorKind::DuplicateDeclaration, "action '" + name + "' is already declared",
                    span);
      s.actions.push_back({name, params, span});
    }
  }
}

void Parser::map_section(Spec &s) {
  while (at_item()) {
    SourceSpan span = peek().span;
    std::string name = identifier();
    expect(Tok::Colon);
    std::vector<Sort> domain;
    Sort result = sort_ref();
    if (at(Tok::Hash) || at(Tok::Arrow)) {
      domain.push_back(result);
      while (accept(Tok::Hash))
        domain.push_back(sort_ref());
      expect(Tok::Arrow);
      result = sort_ref();
    }
    expect(Tok::Semicolon);
    if (s.find_function(name))
      throw Error(ErrorKind::DuplicateDeclaration, "function '" + name + "' is already declared",
                  span);
    auto fn = std::make_shared<FunctionDef>();
    fn->name = name;
    fn->result = result;
    fn->span = span;
    for (Sort d : domain)
      fn->params.emplace_back(std::string(), d);
    s.functions.push_back(fn);
  }
}

void Parser::eqn_section(Spec &s) {
  while (at_item()) {
    SourceSpan span = peek().span;
    std::string name = identifier();
    std::shared_ptr<FunctionDef> fn;
    for (auto &f : s.functions)
      if (f->name == name)
        fn = f;
    if (!fn)
      throw Error(ErrorKind::UnknownName, "equation for undeclared function '" + name + "'", span);
    if (fn->body)
      throw Error(ErrorKind::DuplicateDeclaration, "function '" + name + "' already has an equation",
                  span);
    std::vector<std::string> params;
    if (accept(Tok::LParen)) {
      do {
        params.push_back(identifier());
      } while (accept(Tok::Comma));
      expect(Tok::RParen);
    }
    if (params.size() != fn->params.size())
      throw Error(ErrorKind::Parse,
                  "equation for '" + name + "' has " + std::to_string(params.size()) +
                      " parameters, declared " + std::to_string(fn->params.size()),
                  span);
    for (std::size_t i = 0; i < params.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j)
        if (params[j] == params[i])
          throw Error(ErrorKind::DuplicateDeclaration, "parameter '" + params[i] + "' repeated",
                      span);
      fn->params[i].first = params[i];
    }
    expect(Tok::Assign);
    fn->body = dexpr();
    expect(Tok::Semicolon);
  }
}

void Parser::proc_section(Spec &s) {
  while (at_item()) {
    ProcDef def;
    def.span = peek().span;
    def.name = identifier();
    if (accept(Tok::LParen)) {
      if (!at(Tok::RParen)) {
        do {
          std::vector<std::string> names;
          do {
            names.push_back(identifier());
          } while (accept(Tok::Comma));
          expect(Tok::Colon);
          Sort sort = sort_ref();
          for (auto &n : names)
            def.params.push_back({n, sort});
        } while (accept(Tok::Comma));
      }
      expect(Tok::RParen);
    }
    for (std::size_t i = 0; i < def.params.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (def.params[i].name == def.params[j].name)
          throw Error(ErrorKind::DuplicateDeclaration,
                      "parameter '" + def.params[i].name + "' repeated", def.span);
    expect(Tok::Assign);
    def.body = proc();
    expect(Tok::Semicolon);
    if (s.find_process(def.name) >= 0)
      throw Error(ErrorKind::DuplicateDeclaration,
                  "process '" + def.name + "' is already declared", def.span);
    s.processes.push_back(std::move(def));
  }
}

Spec Parser::spec() {
  Spec s;
  s.file = options_.file;
  while (!at(Tok::End)) {
    const Token &kw = peek();
    if (accept_word("sort")) {
      sort_section(s);
    } else if (accept_word("act")) {
      act_section(s);
    } else if (accept_word("map")) {
      map_section(s);
    } else if (accept_word("eqn")) {
      eqn_section(s);
    } else if (accept_word("proc")) {
      proc_section(s);
    } else if (accept_word("init")) {
      if (s.init)
        throw Error(ErrorKind::DuplicateDeclaration, "init is already given", kw.span);
      s.init = proc();
      expect(Tok::Semicolon);
    } else {
      fail({"'sort'", "'act'", "'map'", "'eqn'", "'proc'", "'init'"});
    }
  }
  if (!s.init)
    throw Error(ErrorKind::Parse, "missing init section", peek().span);
  for (const auto &fn : s.functions)
    if (!fn->body)
      throw Error(ErrorKind::Parse, "function '" + fn->name + "' has no equation", fn->span);
  return s;
}

// proc := 'sum' binder '.' proc | par ('+' par)*
ProcPtr Parser::proc() {
  ProcPtr lhs = proc_par();
  while (at(Tok::Plus)) {
    SourceSpan span = next().span;
    ProcPtr c = make_proc(ProcKind::Choice, span);
    c->left = lhs;
    c->right = proc_par();
    lhs = c;
  }
  return lhs;
}

ProcPtr Parser::proc_par() {
  ProcPtr lhs = proc_cond();
  while (at(Tok::OrOr)) {
    SourceSpan span = next().span;
    ProcPtr p = make_proc(ProcKind::Parallel, span);
    p->left = lhs;
    p->right = proc_cond();
    lhs = p;
  }
  return lhs;
}

ProcPtr Parser::proc_cond() {
  // A condition is a data expression followed by '->'; anything else is a process.
  std::size_t saved = pos_;
  ExprPtr cond;
  if (!at_word("sum") && !at_word("delta") && !at_word("allow") && !at_word("comm")) {
    try {
      cond = dexpr();
      if (!at(Tok::Arrow))
        cond.reset();
    } catch (const Error &) {
      cond.reset();
    }
  }
  if (!cond) {
    pos_ = saved;
    return proc_seq();
  }
  SourceSpan span = next().span;
  ProcPtr ite = make_proc(ProcKind::IfThenElse, span);
  ite->cond = cond;
  ite->left = proc_seq();
  if (accept(Tok::Diamond))
    ite->right = proc_cond();
  else
    ite->right = make_proc(ProcKind::Deadlock, span);
  return ite;
}

ActionTerm Parser::action_term() {
  ActionTerm t;
  t.span = peek().span;
  t.name = identifier();
  if (at(Tok::LParen))
    t.args = call_args();
  return t;
}

std::vector<ActionTerm> Parser::multi_action() {
  std::vector<ActionTerm> out;
  out.push_back(action_term());
  while (accept(Tok::Bar))
    out.push_back(action_term());
  return out;
}

ProcPtr Parser::proc_seq() {
  if (at(Tok::Ident) && !kKeywords.count(peek().text)) {
    SourceSpan span = peek().span;
    std::vector<ActionTerm> ma = multi_action();
    if (accept(Tok::Dot)) {
      ProcPtr p = make_proc(ProcKind::Prefix, span);
      p->actions = std::move(ma);
      p->left = proc_seq();
      return p;
    }
    if (ma.size() == 1) {
      // Either a process call or a lone action; resolved once declarations are known.
      ProcPtr call = make_proc(ProcKind::Call, span);
      call->name = ma[0].name;
      call->args = std::move(ma[0].args);
      return call;
    }
    ProcPtr p = make_proc(ProcKind::Prefix, span);
    p->actions = std::move(ma);
    p->left = make_proc(ProcKind::Deadlock, span);
    return p;
  }
  ProcPtr p = proc_primary();
  if (at(Tok::Dot))
    fail({"'+'", "'||'", "')'", "';'"}, "sequential composition requires a multi-action on its left");
  return p;
}

ProcPtr Parser::proc_primary() {
  SourceSpan span = peek().span;
  if (accept(Tok::LParen)) {
    ProcPtr p = proc();
    expect(Tok::RParen);
    return p;
  }
  if (accept_word("delta"))
    return make_proc(ProcKind::Deadlock, span);
  if (accept_word("sum")) {
    auto bs = binders();
    expect(Tok::Dot);
    ProcPtr body = proc();
    for (auto it = bs.rbegin(); it != bs.rend(); ++it) {
      ProcPtr s = make_proc(ProcKind::Sum, span);
      s->name = it->first;
      s->sort = it->second;
      s->left = body;
      body = s;
    }
    return body;
  }
  if (accept_word("allow")) {
    ProcPtr a = make_proc(ProcKind::Allow, span);
    expect(Tok::LParen);
    expect(Tok::LBrace);
    do {
      std::vector<std::string> names;
      SourceSpan item = peek().span;
      names.push_back(identifier());
      while (accept(Tok::Bar))
        names.push_back(identifier());
      std::sort(names.begin(), names.end());
      if (std::find(a->allow.begin(), a->allow.end(), names) != a->allow.end())
        throw Error(ErrorKind::DuplicateDeclaration, "allow set lists a multi-action twice", item);
      a->allow.push_back(std::move(names));
    } while (accept(Tok::Comma));
    expect(Tok::RBrace);
    expect(Tok::Comma);
    a->left = proc();
    expect(Tok::RParen);
    return a;
  }
  if (accept_word("comm")) {
    ProcPtr c = make_proc(ProcKind::Comm, span);
    expect(Tok::LParen);
    expect(Tok::LBrace);
    do {
      CommRule r;
      r.span = peek().span;
      r.send = identifier();
      expect(Tok::Bar);
      r.receive = identifier();
      if (at(Tok::Bar))
        fail({"'->'"}, "communication rules synchronise exactly two actions");
      expect(Tok::Arrow);
      r.result = identifier();
      c->comm.push_back(std::move(r));
    } while (accept(Tok::Comma));
    expect(Tok::RBrace);
    expect(Tok::Comma);
    c->left = proc();
    expect(Tok::RParen);
    return c;
  }
  fail({"process expression"});
}

std::vector<std::pair<std::string, Sort>> Parser::binders() {
  std::vector<std::pair<std::string, Sort>> out;
  do {
    std::string name = identifier();
    expect(Tok::Colon);
    out.emplace_back(name, sort_ref());
  } while (accept(Tok::Comma));
  return out;
}

// ---------------------------------------------------------------------------
// Formulas

FormPtr Parser::sf() {
  if (at_word("mu") || at_word("nu") || at_word("forall") || at_word("exists"))
    return sf_primary();
  return sf_implies();
}

FormPtr Parser::sf_implies() {
  FormPtr lhs = sf_or();
  if (at(Tok::Implies)) {
    SourceSpan span = next().span;
    FormPtr f = make_form(FormKind::Implies, span);
    f->operands = {lhs, sf_implies()};
    return f;
  }
  return lhs;
}

FormPtr Parser::sf_or() {
  FormPtr lhs = sf_and();
  while (at(Tok::OrOr)) {
    SourceSpan span = next().span;
    FormPtr f = make_form(FormKind::Or, span);
    f->operands = {lhs, sf_and()};
    lhs = f;
  }
  return lhs;
}

FormPtr Parser::sf_and() {
  FormPtr lhs = sf_unary();
  while (at(Tok::AndAnd)) {
    SourceSpan span = next().span;
    FormPtr f = make_form(FormKind::And, span);
    f->operands = {lhs, sf_unary()};
    lhs = f;
  }
  return lhs;
}

FormPtr Parser::sf_unary() {
  SourceSpan span = peek().span;
  if (accept(Tok::Bang)) {
    FormPtr f = make_form(FormKind::Not, span);
    f->operands = {sf_unary()};
    return f;
  }
  if (accept(Tok::LBracket)) {
    FormPtr f = make_form(FormKind::Box, span);
    f->regular = regular();
    expect(Tok::RBracket);
    f->operands = {sf_unary()};
    return f;
  }
  if (accept(Tok::Lt)) {
    FormPtr f = make_form(FormKind::Diamond, span);
    f->regular = regular();
    expect(Tok::Gt);
    f->operands = {sf_unary()};
    return f;
  }
  return sf_primary();
}

FormPtr Parser::quantifier(FormKind kind) {
  SourceSpan span = peek().span;
  next();
  auto bs = binders();
  expect(Tok::Dot);
  FormPtr body = sf();
  for (auto it = bs.rbegin(); it != bs.rend(); ++it) {
    FormPtr q = make_form(kind, span);
    q->name = it->first;
    q->sort = it->second;
    q->operands = {body};
    body = q;
  }
  return body;
}

FormPtr Parser::fixpoint(FormKind kind) {
  SourceSpan span = peek().span;
  next();
  FormPtr f = make_form(kind, span);
  f->name = identifier();
  if (accept(Tok::LParen)) {
    do {
      FixParam p;
      p.name = identifier();
      expect(Tok::Colon);
      p.sort = sort_ref();
      expect(Tok::Assign);
      p.init = dexpr();
      for (const auto &q : f->params)
        if (q.name == p.name)
          throw Error(ErrorKind::DuplicateDeclaration, "parameter '" + p.name + "' repeated", span);
      f->params.push_back(std::move(p));
    } while (accept(Tok::Comma));
    expect(Tok::RParen);
  }
  expect(Tok::Dot);
  fixpoint_scope_.emplace_back(f->name, f->params.size());
  f->operands = {sf()};
  fixpoint_scope_.pop_back();
  return f;
}

FormPtr Parser::sf_primary() {
  const Token &t = peek();
  SourceSpan span = t.span;
  if (accept(Tok::LParen)) {
    FormPtr f = sf();
    expect(Tok::RParen);
    return f;
  }
  if (t.kind == Tok::Ident) {
    if (t.text == "true" || t.text == "false") {
      next();
      return make_form(t.text == "true" ? FormKind::True : FormKind::False, span);
    }
    if (t.text == "val") {
      next();
      FormPtr f = make_form(FormKind::Val, span);
      expect(Tok::LParen);
      f->expr = dexpr();
      expect(Tok::RParen);
      return f;
    }
    if (t.text == "forall")
      return quantifier(FormKind::Forall);
    if (t.text == "exists")
      return quantifier(FormKind::Exists);
    if (t.text == "mu")
      return fixpoint(FormKind::Mu);
    if (t.text == "nu")
      return fixpoint(FormKind::Nu);
    if (!kKeywords.count(t.text)) {
      next();
      FormPtr f = make_form(FormKind::Var, span);
      f->name = t.text;
      if (at(Tok::LParen))
        f->args = call_args();
      auto it = std::find_if(fixpoint_scope_.rbegin(), fixpoint_scope_.rend(),
                             [&](const auto &b) { return b.first == f->name; });
      if (it == fixpoint_scope_.rend())
        throw Error(ErrorKind::UnboundFixpointVariable,
                    "'" + f->name + "' is not bound by an enclosing mu or nu", span);
      if (it->second != f->args.size())
        throw Error(ErrorKind::Parse,
                    "'" + f->name + "' expects " + std::to_string(it->second) + " arguments", span);
      return f;
    }
  }
  fail({"state formula"});
}

RegularFormula Parser::regular() {
  RegularFormula r;
  r.action = af();
  r.star = accept(Tok::Star);
  return r;
}

ActPtr Parser::af() { return af_or(); }

ActPtr Parser::af_or() {
  ActPtr lhs = af_and();
  while (at(Tok::OrOr)) {
    SourceSpan span = next().span;
    ActPtr a = make_act(ActKind::Or, span);
    a->operands = {lhs, af_and()};
    lhs = a;
  }
  return lhs;
}

ActPtr Parser::af_and() {
  ActPtr lhs = af_unary();
  while (at(Tok::AndAnd)) {
    SourceSpan span = next().span;
    ActPtr a = make_act(ActKind::And, span);
    a->operands = {lhs, af_unary()};
    lhs = a;
  }
  return lhs;
}

ActPtr Parser::af_unary() {
  SourceSpan span = peek().span;
  if (accept(Tok::Bang)) {
    ActPtr a = make_act(ActKind::Not, span);
    a->operands = {af_unary()};
    return a;
  }
  return af_primary();
}

ActPtr Parser::af_primary() {
  const Token &t = peek();
  SourceSpan span = t.span;
  if (accept(Tok::LParen)) {
    ActPtr a = af();
    expect(Tok::RParen);
    return a;
  }
  if (accept_word("true"))
    return make_act(ActKind::Any, span);
  if (accept_word("false")) {
    ActPtr a = make_act(ActKind::Not, span);
    a->operands = {make_act(ActKind::Any, span)};
    return a;
  }
  if (accept_word("exists")) {
    auto bs = binders();
    expect(Tok::Dot);
    ActPtr body = af();
    for (auto it = bs.rbegin(); it != bs.rend(); ++it) {
      ActPtr q = make_act(ActKind::Exists, span);
      q->var = it->first;
      q->sort = it->second;
      q->operands = {body};
      body = q;
    }
    return body;
  }
  if (t.kind == Tok::Ident && !kKeywords.count(t.text)) {
    ActPtr a = make_act(ActKind::Match, span);
    a->pattern = multi_action();
    return a;
  }
  fail({"action formula"});
}

FormPtr Parser::formula_file() {
  FormPtr f = sf();
  if (!at(Tok::End))
    fail({"end of input"});
  check_monotone(*f);
  return f;
}

ExprPtr Parser::expr_file() {
  ExprPtr e = dexpr();
  if (!at(Tok::End))
    fail({"end of input"});
  return e;
}

// ---------------------------------------------------------------------------
// Name resolution for models

struct Resolver {
  Spec &spec;

  void proc(const ProcPtr &p) {
    switch (p->kind) {
    case ProcKind::Prefix:
      for (const auto &a : p->actions)
        if (!spec.find_action(a.name))
          throw Error(spec.find_process(a.name) >= 0 ? ErrorKind::Parse : ErrorKind::UnknownName,
                      "'" + a.name + "' is not a declared action", a.span);
      proc(p->left);
      break;
    case ProcKind::Call:
      if (spec.find_process(p->name) < 0) {
        if (!spec.find_action(p->name))
          throw Error(ErrorKind::UnknownName, "'" + p->name + "' is neither a process nor an action",
                      p->span);
        // A lone action: `a` is `a.delta`.
        ActionTerm t{p->name, std::move(p->args), p->span};
        p->kind = ProcKind::Prefix;
        p->actions = {std::move(t)};
        p->args.clear();
        p->name.clear();
        p->left = make_proc(ProcKind::Deadlock, p->span);
      } else {
        p->proc_index = spec.find_process(p->name);
      }
      break;
    case ProcKind::Choice:
    case ProcKind::Parallel:
    case ProcKind::IfThenElse:
      proc(p->left);
      proc(p->right);
      break;
    case ProcKind::Sum:
      proc(p->left);
      break;
    case ProcKind::Comm: {
      std::set<std::string> results;
      std::set<std::string> lhs_names;
      for (const auto &r : p->comm) {
        for (const auto *n : {&r.send, &r.receive, &r.result})
          if (!spec.find_action(*n))
            throw Error(ErrorKind::UnknownName, "'" + *n + "' is not a declared action", r.span);
        if (!results.insert(r.result).second)
          throw Error(ErrorKind::DuplicateDeclaration,
                      "communication result '" + r.result + "' used twice", r.span);
        if (!lhs_names.insert(r.send).second || !lhs_names.insert(r.receive).second)
          throw Error(ErrorKind::Parse, "overlapping communication rules are ambiguous", r.span);
      }
      proc(p->left);
      break;
    }
    case ProcKind::Allow:
      for (const auto &set : p->allow)
        for (const auto &n : set)
          if (!spec.find_action(n))
            throw Error(ErrorKind::UnknownName, "'" + n + "' is not a declared action", p->span);
      proc(p->left);
      break;
    case ProcKind::Deadlock:
      break;
    }
  }
};

} // namespace

Spec parse_spec(std::string_view text, const ParseOptions &options) {
  Parser parser(text, options);
  Spec s = parser.spec();
  Resolver resolver{s};
  for (auto &def : s.processes)
    resolver.proc(def.body);
  resolver.proc(s.init);
  return s;
}

FormPtr parse_formula(std::string_view text, const ParseOptions &options) {
  Parser parser(text, options);
  return parser.formula_file();
}

ExprPtr parse_expr(std::string_view text, const ParseOptions &options) {
  Parser parser(text, options);
  return parser.expr_file();
}

Value parse_value(const std::string &text) {
  if (text == "true")
    return Value::boolean(true);
  if (text == "false")
    return Value::boolean(false);
  std::size_t used = 0;
  long long n = 0;
  try {
    n = std::stoll(text, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    throw Error(ErrorKind::Parse, "'" + text + "' is not a value");
  return n < 0 ? Value::integer(n) : Value::nat(n);
}

namespace {

void monotone(const StateFormula &f, std::vector<std::pair<std::string, bool>> &scope, bool negated) {
  switch (f.kind) {
  case FormKind::Not:
    monotone(*f.operands[0], scope, !negated);
    return;
  case FormKind::Implies:
    monotone(*f.operands[0], scope, !negated);
    monotone(*f.operands[1], scope, negated);
    return;
  case FormKind::Mu:
  case FormKind::Nu:
    scope.emplace_back(f.name, negated);
    monotone(*f.operands[0], scope, negated);
    scope.pop_back();
    return;
  case FormKind::Var:
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (it->first == f.name) {
        if (it->second != negated)
          throw Error(ErrorKind::NonMonotoneFixpoint,
                      "'" + f.name + "' occurs under an odd number of negations", f.span);
        return;
      }
    }
    throw Error(ErrorKind::UnboundFixpointVariable, "'" + f.name + "' is not bound", f.span);
  default:
    for (const auto &op : f.operands)
      monotone(*op, scope, negated);
  }
}

} // namespace

void check_monotone(const StateFormula &f) {
  std::vector<std::pair<std::string, bool>> scope;
  monotone(f, scope, false);
}

} // namespace pmx
