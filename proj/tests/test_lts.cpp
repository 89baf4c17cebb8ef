#include <doctest.h>

#include <set>
#include <thread>

#include "oracle/aut_parser.hpp"
#include "oracle/mutex_sim.hpp"
#include "pmx/lts.hpp"
#include "support.hpp"

using namespace pmx;

TEST_SUITE("lts") {

TEST_CASE("delta exports a single state") {
  Lts lts = explore(load_spec("init delta;"));
  CHECK(lts.state_count() == 1);
  CHECK(lts.transition_count() == 0);
  CHECK(lts.deadlocks == std::vector<int>{0});
  CHECK(export_aut(lts) == "des (0,0,1)\n");
}

TEST_CASE("one transition") {
  Lts lts = explore(load_spec("act a; init a . delta;"));
  CHECK(export_aut(lts) == "des (0,1,2)\n(0,\"a\",1)\n");
  CHECK(deadlock_states(lts) == std::vector<int>{1});
}

TEST_CASE("corpus models are isomorphic to the hand-written simulators") {
  using oracle::Algorithm;
  struct Case {
    const char *model;
    Algorithm alg;
    oracle::SimState init;
  };
  oracle::SimState bad;
  bad.flag[1] = true;
  for (const Case &c : {Case{"naive", Algorithm::Naive, {}}, Case{"improved", Algorithm::Improved, {}},
                        Case{"dekker", Algorithm::Dekker, {}}, Case{"peterson", Algorithm::Peterson, {}},
                        Case{"peterson_bad_init", Algorithm::Peterson, bad}}) {
    CAPTURE(std::string(c.model));
    Lts lts = explore(support::model(c.model));
    oracle::SimLts sim = oracle::simulate(c.alg, c.init);
    CHECK(lts.state_count() == sim.states.size());
    CHECK(lts.transition_count() == sim.transitions);
    CHECK(lts.deadlocks.size() == sim.deadlocks);
    CHECK(oracle::isomorphic(lts, sim));
  }
}

TEST_CASE("the isomorphism check rejects a different algorithm or initial state") {
  Lts peterson = explore(support::model("peterson"));
  oracle::SimState bad;
  bad.flag[1] = true;
  CHECK_FALSE(oracle::isomorphic(peterson, oracle::simulate(oracle::Algorithm::Peterson, bad)));
  CHECK_FALSE(oracle::isomorphic(peterson, oracle::simulate(oracle::Algorithm::Dekker)));
  oracle::SimState turned;
  turned.turn = 1;
  CHECK_FALSE(oracle::isomorphic(peterson, oracle::simulate(oracle::Algorithm::Peterson, turned)));
}

TEST_CASE("golden sizes") {
  struct Golden {
    const char *model;
    std::size_t states, transitions, deadlocks;
  };
  for (const Golden &g : {Golden{"naive", 25, 44, 0}, Golden{"improved", 16, 24, 1}, Golden{"dekker", 114, 206, 0},
                          Golden{"peterson", 32, 54, 0}, Golden{"peterson_bad_init", 35, 59, 0}}) {
    CAPTURE(std::string(g.model));
    Lts lts = explore(support::model(g.model));
    CHECK(lts.state_count() == g.states);
    CHECK(lts.transition_count() == g.transitions);
    CHECK(lts.deadlocks.size() == g.deadlocks);
  }
}

TEST_CASE("improved model deadlocks after both flags are raised") {
  Lts lts = explore(support::model("improved"));
  REQUIRE(lts.deadlocks.size() == 1);
  int s = 0;
  for (const char *label : {"set_flag(1,true)", "set_flag(0,true)"}) {
    int next = -1;
    for (int t : lts.outgoing[s])
      if (lts.transitions[t].label.text() == label)
        next = lts.transitions[t].target;
    REQUIRE(next >= 0);
    s = next;
  }
  CHECK(lts.deadlocks[0] == s);
}

TEST_CASE("aut export round-trips through an independent reader") {
  for (const char *name : {"naive", "dekker", "peterson"}) {
    CAPTURE(std::string(name));
    Lts lts = explore(support::model(name));
    oracle::Aut aut = oracle::parse_aut(export_aut(lts));
    CHECK(aut.initial == 0);
    CHECK(aut.states == lts.state_count());
    CHECK(aut.transitions == lts.transition_count());
    REQUIRE(aut.edges.size() == lts.transition_count());
    std::set<std::tuple<int, std::string, int>> unique;
    for (std::size_t k = 0; k < aut.edges.size(); ++k) {
      const auto &[src, label, dst] = aut.edges[k];
      CHECK(src == lts.transitions[k].source);
      CHECK(label == lts.transitions[k].label.text());
      CHECK(dst == lts.transitions[k].target);
      CHECK(src < static_cast<int>(aut.states));
      CHECK(dst < static_cast<int>(aut.states));
      unique.insert(aut.edges[k]);
    }
    CHECK(unique.size() == aut.edges.size());
  }
}

TEST_CASE("numbering is breadth-first and transitions are sorted") {
  Lts lts = explore(support::model("dekker"));
  int seen = 1;
  for (std::size_t s = 0; s < lts.state_count(); ++s) {
    std::string prev_label;
    for (int t : lts.outgoing[s]) {
      const auto &tr = lts.transitions[t];
      CHECK(tr.source == static_cast<int>(s));
      CHECK(prev_label <= tr.label.text());
      prev_label = tr.label.text();
      CHECK(tr.target <= seen);
      if (tr.target == seen)
        ++seen;
    }
  }
  CHECK(seen == static_cast<int>(lts.state_count()));
}

TEST_CASE("every exported transition replays under step") {
  Spec spec = support::model("peterson");
  Lts lts = explore(spec);
  Semantics sem(spec);
  std::map<std::string, int> by_text;
  std::vector<int> ids{sem.initial()};
  by_text[sem.canonical(ids[0])] = 0;
  for (const auto &t : lts.transitions) {
    Semantics::State src = -1;
    for (std::size_t k = 0; k < ids.size(); ++k)
      if (sem.canonical(ids[k]) == lts.states[t.source])
        src = ids[k];
    REQUIRE(src >= 0);
    bool found = false;
    for (const auto &[label, target] : sem.step(src))
      if (label == t.label && sem.canonical(target) == lts.states[t.target]) {
        found = true;
        ids.push_back(target);
      }
    CHECK(found);
  }
}

TEST_CASE("exploration is deterministic, also under concurrent use of one semantics") {
  Spec spec = support::model("dekker");
  std::string a = export_aut(explore(spec));
  CHECK(a == export_aut(explore(spec)));
  Semantics sem(spec);
  Lts lts = explore(spec);
  std::vector<std::thread> workers;
  std::vector<int> ok(4, 1);
  for (int w = 0; w < 4; ++w)
    workers.emplace_back([&, w] {
      // every worker rebuilds the successor texts of all states reachable from init
      std::vector<Semantics::State> frontier{sem.initial()};
      std::set<std::string> seen;
      while (!frontier.empty()) {
        auto s = frontier.back();
        frontier.pop_back();
        if (!seen.insert(sem.canonical(s)).second)
          continue;
        for (const auto &[label, target] : sem.step(s))
          frontier.push_back(target);
      }
      ok[w] = seen.size() == lts.state_count();
    });
  for (auto &t : workers)
    t.join();
  CHECK(ok == std::vector<int>(4, 1));
}

TEST_CASE("state limit") {
  ExploreConfig cfg;
  cfg.max_states = 10;
  try {
    explore(support::model("dekker"), cfg);
    FAIL("expected StateLimitExceeded");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::StateLimitExceeded);
  }
}

} // TEST_SUITE
