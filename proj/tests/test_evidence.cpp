#include <doctest.h>

#include <sstream>

#include "oracle/monitors.hpp"
#include "pmx/evidence.hpp"
#include "support.hpp"

using namespace pmx;

namespace {

CheckResult run(const std::string &model, const std::string &property, const CheckConfig &cfg = {}) {
  Spec spec = support::model(model);
  return check(spec, *support::property(property, spec, cfg), cfg);
}

using Trace = std::vector<std::string>;

} // namespace

TEST_SUITE("evidence") {

TEST_CASE("naive mutual exclusion: six-step trace into a double entry") {
  CheckResult r = run("naive", "mutual_exclusion");
  REQUIRE_FALSE(r.holds);
  const Evidence &ev = r.evidence;
  CHECK(ev.kind == EvidenceKind::Trace);
  CHECK(ev.diagnostic.empty());
  Trace t = support::labels(ev.stem);
  CHECK(t == Trace{"get_flag(1,false)", "get_flag(0,false)", "set_flag(0,true)", "enter(0)", "set_flag(1,true)",
                   "enter(1)"});
  Trace figure{"get_flag(0,false)", "get_flag(1,false)", "set_flag(1,true)", "enter(1)", "set_flag(0,true)",
               "enter(0)"};
  CHECK(support::swap01(t) == figure);
  CHECK(oracle::violates_mutual_exclusion(t));
  CHECK(replay(ev, *r.lts));
  CHECK(ev.stem.front().source == 0);
}

TEST_CASE("improved algorithm: two steps into the deadlock") {
  CheckResult r = run("improved", "always_eventually_request");
  REQUIRE_FALSE(r.holds);
  Trace t = support::labels(r.evidence.stem);
  CHECK(support::swap01(t) == Trace{"set_flag(1,true)", "set_flag(0,true)"});
  CHECK(r.evidence.kind == EvidenceKind::Trace);
  CHECK(r.lts->deadlocks == std::vector<int>{r.evidence.stem.back().target});
  CHECK(render(r.evidence) == "set_flag(0,true)\nset_flag(1,true)\n-- verdict: fails --\n");
}

TEST_CASE("Dekker eventual access: a process spins reading shared variables") {
  CheckResult r = run("dekker", "eventual_access");
  REQUIRE_FALSE(r.holds);
  const Evidence &ev = r.evidence;
  CHECK(ev.kind == EvidenceKind::Lasso);
  CHECK(support::labels(ev.stem) == Trace{"set_flag(0,true)|wish(0)", "set_flag(1,true)|wish(1)"});
  CHECK(support::labels(ev.cycle) == Trace{"get_flag(1,true)", "get_turn(0)"});
  for (const auto &l : support::labels(ev.cycle))
    CHECK((l.rfind("get_flag", 0) == 0 || l.rfind("get_turn", 0) == 0));
  CHECK(ev.cycle.back().target == ev.stem.back().target);
  CHECK(replay(ev, *r.lts));
}

TEST_CASE("Dekker eventual access under fairness: the other process keeps entering") {
  CheckResult r = run("dekker", "eventual_access_fair");
  REQUIRE_FALSE(r.holds);
  const Evidence &ev = r.evidence;
  REQUIRE(ev.kind == EvidenceKind::Lasso);
  CHECK(ev.stem.size() == 7);
  CHECK(ev.cycle.size() == 6);
  Trace stem = support::sorted_labels(support::labels(ev.stem));
  Trace cycle = support::sorted_labels(support::labels(ev.cycle));
  Trace fig_stem = support::sorted_labels({"wish(1)|set_flag(1,true)", "wish(0)|set_flag(0,true)", "get_flag(0,true)",
                                           "get_turn(0)", "set_flag(1,false)"});
  Trace fig_cycle = support::sorted_labels({"get_flag(1,false)", "set_turn(1)", "enter(0)", "leave(0)",
                                            "set_flag(0,false)", "wish(0)|set_flag(0,true)"});
  // same infinite word; both have period 6 and stems of at most 7
  CHECK(support::unroll(stem, cycle, 7 + 2 * 6) == support::unroll(fig_stem, fig_cycle, 7 + 2 * 6));
  CHECK(replay(ev, *r.lts));
}

TEST_CASE("Peterson bounded overtaking B=1: twelve steps") {
  CheckConfig cfg = support::with_const("B", 1);
  CheckResult r = run("peterson", "bounded_overtaking", cfg);
  REQUIRE_FALSE(r.holds);
  Trace t = support::labels(r.evidence.stem);
  CHECK(r.evidence.kind == EvidenceKind::Trace);
  Trace figure = support::sorted_labels(
      {"wish(1)|set_flag(1,true)", "set_turn(0)", "get_flag(0, false)", "wish(0)|set_flag(0,true)", "enter(1)",
       "leave(1)", "set_flag(1, false)", "wish(1)|set_flag(1,true)", "set_turn(0)", "set_turn(1)", "get_turn(1)",
       "enter(1)"});
  CHECK(support::swap01(t) == figure);
  CHECK(oracle::violates_overtaking(t, 1));
  CHECK_FALSE(oracle::violates_overtaking(t, 2));
  CHECK(replay(r.evidence, *r.lts));
}

TEST_CASE("monitors distinguish violating and safe traces") {
  CHECK_FALSE(oracle::violates_mutual_exclusion({"enter(0)", "leave(0)", "enter(1)"}));
  CHECK(oracle::violates_mutual_exclusion({"enter(0)", "enter(1)"}));
  CHECK_FALSE(oracle::violates_overtaking({"set_flag(0,true)|wish(0)", "enter(1)", "enter(0)"}, 1));
  CHECK(oracle::violates_overtaking({"set_flag(0,true)|wish(0)", "enter(1)", "enter(1)"}, 1));
}

TEST_CASE("replay rejects altered evidence") {
  CheckResult r = run("naive", "mutual_exclusion");
  Evidence ev = r.evidence;
  REQUIRE(replay(ev, *r.lts));
  Evidence relabelled = ev;
  relabelled.stem[2].label = ev.stem[3].label;
  CHECK_FALSE(replay(relabelled, *r.lts));
  Evidence broken = ev;
  broken.stem.erase(broken.stem.begin() + 1);
  CHECK_FALSE(replay(broken, *r.lts));
  Evidence moved = ev;
  moved.stem[0].source = 1;
  CHECK_FALSE(replay(moved, *r.lts));
  Evidence lasso = ev;
  lasso.kind = EvidenceKind::Lasso;
  CHECK_FALSE(replay(lasso, *r.lts)); // a lasso needs a cycle
}

TEST_CASE("empty evidence") {
  Evidence ev;
  ev.holds = false;
  CHECK(replay(ev, explore(load_spec("init delta;"))));
  CHECK(render(ev) == "-- verdict: fails --\n");
  ev.holds = true;
  CHECK(render(ev) == "-- verdict: holds --\n");
}

TEST_CASE("lasso rendering and the machine format") {
  CheckResult r = run("dekker", "eventual_access");
  CHECK(render(r.evidence) == "set_flag(0,true)|wish(0)\nset_flag(1,true)|wish(1)\n-- cycle --\n"
                              "get_flag(1,true)\nget_turn(0)\n-- verdict: fails --\n");
  std::ostringstream machine;
  render_machine(r.evidence, machine);
  std::istringstream lines(machine.str());
  std::string line;
  std::vector<std::string> all;
  while (std::getline(lines, line))
    all.push_back(line);
  REQUIRE(all.size() == 5);
  CHECK(all[0].find("\"part\":\"stem\"") != std::string::npos);
  CHECK(all[0].find("\"src\":0") != std::string::npos);
  CHECK(all[2].find("\"part\":\"cycle\"") != std::string::npos);
  CHECK(all[2].find("\"label\":\"get_flag(1,true)\"") != std::string::npos);
  CHECK(all[4].find("fails") != std::string::npos);
}

TEST_CASE("holding existential formulas produce a witness") {
  Spec spec = support::model("naive");
  CheckResult r = check(spec, *support::formula("<true*><exists i:Nat. enter(i)>true", spec));
  REQUIRE(r.holds);
  CHECK(r.evidence.holds);
  CHECK(r.evidence.diagnostic.empty());
  REQUIRE_FALSE(r.evidence.stem.empty());
  CHECK(r.evidence.stem.back().label.text().rfind("enter(", 0) == 0);
  CHECK(replay(r.evidence, *r.lts));
}

TEST_CASE("branching obligations are cut with a diagnostic") {
  Spec spec = load_spec("act a, b, c; init a . b . delta + a . (b . delta + c . delta);");
  CheckResult r = check(spec, *support::formula("<a>[b]false", spec));
  REQUIRE_FALSE(r.holds);
  CHECK_FALSE(r.evidence.diagnostic.empty());
  CHECK(r.evidence.stem.empty());
  CHECK(replay(r.evidence, *r.lts));
}

TEST_CASE("extraction is deterministic") {
  CheckConfig cfg = support::with_const("B", 1);
  std::string a = render(run("peterson", "bounded_overtaking", cfg).evidence);
  std::string b = render(run("peterson", "bounded_overtaking", cfg).evidence);
  CHECK(a == b);
}

} // TEST_SUITE
