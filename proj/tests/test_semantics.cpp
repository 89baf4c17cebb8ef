#include <doctest.h>

#include <random>

#include "oracle/mutex_sim.hpp"
#include "pmx/lts.hpp"
#include "pmx/semantics.hpp"
#include "support.hpp"

using namespace pmx;

namespace {

ActionInstance inst(std::string name, std::vector<Value> args) { return {std::move(name), std::move(args)}; }

std::vector<std::string> texts(Semantics &sem, const Semantics::Successors &succ) {
  std::vector<std::string> out;
  for (const auto &[label, target] : succ)
    out.push_back(label.text() + " -> " + sem.canonical(target));
  return out;
}

const ActionFormula &action_of(const FormPtr &f) { return *f->regular.action; }

void swap_parallel(ProcPtr &p) {
  if (!p)
    return;
  auto copy = std::make_shared<ProcExpr>(*p);
  if (copy->kind == ProcKind::Parallel)
    std::swap(copy->left, copy->right);
  swap_parallel(copy->left);
  swap_parallel(copy->right);
  p = copy;
}

bool isomorphic(const Lts &a, const Lts &b) { return oracle::isomorphic(oracle::graph_of(a), oracle::graph_of(b)); }

} // namespace

TEST_SUITE("semantics") {

TEST_CASE("Flag(0,false) offers its value and accepts both updates") {
  Spec spec = support::model("naive");
  Semantics sem(spec);
  auto s = sem.instance("Flag", {Value::nat(0), Value::boolean(false)});
  CHECK(sem.canonical(s) == "Flag(0, false)");
  CHECK(texts(sem, sem.step(s)) == std::vector<std::string>{
                                      "get_flag_s(0,false) -> Flag(0, false)",
                                      "set_flag_r(0,false) -> Flag(0, false)",
                                      "set_flag_r(0,true) -> Flag(0, true)",
                                  });
}

TEST_CASE("delta has no steps") {
  Spec spec = load_spec("init delta;");
  Semantics sem(spec);
  CHECK(sem.step(sem.initial()).empty());
}

TEST_CASE("naive model: only the two reads are enabled initially") {
  Spec spec = support::model("naive");
  Semantics sem(spec);
  std::vector<std::string> labels;
  for (const auto &[label, target] : sem.step(sem.initial()))
    labels.push_back(label.text());
  CHECK(labels == std::vector<std::string>{"get_flag(0,false)", "get_flag(1,false)"});
}

TEST_CASE("choice, sum, conditional and multi-action prefix") {
  Spec spec = load_spec("act a, b: Nat; c;\n"
                        "proc P(n:Nat) = (n < 1) -> a(n)|c . P(n + 1) <> sum m:Nat. b(m) . delta;\n"
                        "init P(0) + c . delta;");
  Semantics sem(spec);
  auto s0 = sem.initial();
  CHECK(texts(sem, sem.step(s0)) == std::vector<std::string>{"a(0)|c -> P(1)", "c -> delta"});
  auto s1 = sem.step(s0)[0].second;
  CHECK(texts(sem, sem.step(s1)) == std::vector<std::string>{"b(0) -> delta", "b(1) -> delta"});
}

TEST_CASE("parallel composition interleaves and synchronises") {
  Spec spec = load_spec("act a, b; init a . delta || b . delta;");
  Semantics sem(spec);
  std::vector<std::string> labels;
  for (const auto &[label, target] : sem.step(sem.initial()))
    labels.push_back(label.text());
  CHECK(labels == std::vector<std::string>{"a", "a|b", "b"});
}

TEST_CASE("comm fuses equal-argument pairs only") {
  std::vector<CommRule> rules{{"s", "r", "c", {}}};
  MultiAction same({inst("s", {Value::nat(1)}), inst("r", {Value::nat(1)})});
  CHECK(apply_comm(same, rules).text() == "c(1)");
  MultiAction differ({inst("s", {Value::nat(1)}), inst("r", {Value::nat(0)})});
  CHECK(apply_comm(differ, rules).text() == "r(0)|s(1)");
  MultiAction twice({inst("s", {}), inst("r", {}), inst("s", {}), inst("r", {}), inst("s", {})});
  CHECK(apply_comm(twice, rules).text() == "c|c|s");
}

TEST_CASE("comm is idempotent") {
  Spec spec = support::model("dekker");
  std::vector<CommRule> rules = spec.init->left->comm;
  std::vector<std::string> names;
  for (const auto &r : rules) {
    names.push_back(r.send);
    names.push_back(r.receive);
    names.push_back(r.result);
  }
  std::mt19937 rng(7);
  for (int round = 0; round < 2000; ++round) {
    std::vector<ActionInstance> bag;
    int size = 1 + static_cast<int>(rng() % 5);
    for (int k = 0; k < size; ++k) {
      const std::string &n = names[rng() % names.size()];
      const ActionDecl *decl = spec.find_action(n);
      std::vector<Value> args;
      for (Sort s : decl->params)
        args.push_back(s == Sort::Bool ? Value::boolean(rng() % 2) : Value::nat(rng() % 2));
      bag.push_back(inst(n, args));
    }
    MultiAction once = apply_comm(MultiAction(bag), rules);
    CHECK(apply_comm(once, rules) == once);
  }
}

TEST_CASE("allow uses exact name bags") {
  std::vector<std::vector<std::string>> allow{{"a"}, {"a", "b"}};
  CHECK(allowed(MultiAction({inst("a", {})}), allow));
  CHECK(allowed(MultiAction({inst("b", {}), inst("a", {})}), allow));
  CHECK_FALSE(allowed(MultiAction({inst("b", {})}), allow));
  CHECK_FALSE(allowed(MultiAction({inst("a", {}), inst("a", {})}), allow));
}

TEST_CASE("every transition of a corpus model is allowed by its outermost allow") {
  for (const char *name : {"naive", "improved", "dekker", "peterson", "peterson_bad_init"}) {
    CAPTURE(std::string(name));
    Spec spec = support::model(name);
    REQUIRE(spec.init->kind == ProcKind::Allow);
    Lts lts = explore(spec);
    for (const auto &t : lts.transitions)
      CHECK(allowed(t.label, spec.init->allow));
  }
}

TEST_CASE("match") {
  Spec spec = load_spec("act enter, wish: Nat; set_flag: Nat # Bool; a, b; init delta;");
  {
    FormPtr f = support::formula("[exists i1:Nat.enter(i1)]true", spec);
    Env witness;
    CHECK(match(action_of(f), MultiAction({inst("enter", {Value::nat(1)})}), Env{}, &witness));
    CHECK(witness.lookup("i1") == Value::nat(1));
    CHECK_FALSE(match(action_of(f), MultiAction({inst("wish", {Value::nat(1)})}), Env{}));
  }
  {
    FormPtr f = support::formula("forall i:Nat. forall b:Bool. [wish(i)|set_flag(i,b)]true", spec);
    const StateFormula &box = *f->operands[0]->operands[0];
    MultiAction label({inst("wish", {Value::nat(0)}), inst("set_flag", {Value::nat(0), Value::boolean(true)})});
    Env env = Env{}.bind("i", Value::nat(0));
    Env witness;
    CHECK(match(*box.regular.action, label, env, &witness));
    CHECK(witness.lookup("b") == Value::boolean(true));
    CHECK_FALSE(match(*box.regular.action, label, Env{}.bind("i", Value::nat(1))));
    CHECK_FALSE(match(*box.regular.action, MultiAction({inst("wish", {Value::nat(0)})}), env));
  }
  {
    FormPtr f = support::formula("[!a]true", spec);
    CHECK(match(action_of(f), MultiAction({inst("b", {})}), Env{}));
    CHECK_FALSE(match(action_of(f), MultiAction({inst("a", {})}), Env{}));
  }
  {
    FormPtr f = support::formula("[a || b && !a]true", spec);
    CHECK(match(action_of(f), MultiAction({inst("a", {})}), Env{}));
    CHECK(match(action_of(f), MultiAction({inst("b", {})}), Env{}));
    CHECK_FALSE(match(action_of(f), MultiAction({inst("a", {}), inst("b", {})}), Env{}));
  }
}

TEST_CASE("unguarded recursion is reported") {
  Spec spec = load_spec("proc P = P; init P;");
  Semantics sem(spec);
  try {
    sem.step(sem.initial());
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::UnguardedRecursion);
  }
  Spec deep = load_spec("act a; proc P(n:Nat) = P(n + 1); init P(0);");
  Semantics sem2(deep, SemanticsConfig{{}, 100});
  try {
    sem2.step(sem2.initial());
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::UnguardedRecursion);
  }
}

TEST_CASE("evaluation errors propagate") {
  Spec spec = load_spec("act a: Nat; proc P(n:Nat) = a(Int2Nat(n - 1)) . delta; init P(0);");
  Semantics sem(spec);
  CHECK_THROWS_AS(sem.step(sem.initial()), Error);
}

TEST_CASE("swapping parallel operands gives an isomorphic LTS") {
  for (const char *name : {"naive", "improved", "dekker", "peterson", "peterson_bad_init"}) {
    CAPTURE(std::string(name));
    Spec spec = support::model(name);
    Spec swapped = spec;
    swap_parallel(swapped.init);
    CHECK(isomorphic(explore(spec), explore(swapped)));
  }
}

TEST_CASE("step is pure") {
  Spec spec = support::model("peterson");
  Semantics a(spec), b(spec);
  Lts lts = explore(spec);
  for (std::size_t k = 0; k < 5; ++k) {
    auto first = texts(a, a.step(a.initial()));
    CHECK(first == texts(b, b.step(b.initial())));
  }
}

} // TEST_SUITE
