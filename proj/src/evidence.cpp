#include "pmx/evidence.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace pmx {

namespace {

// Does some play from `v` inside the winner's strategy take an LTS move?
bool moves_below(const ParityGame &g, const Solution &sol, int v) {
  std::vector<char> seen(g.size(), 0);
  std::vector<int> stack{v};
  seen[v] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    const GameVertex &x = g.vertices[u];
    for (int k = 0; k < static_cast<int>(x.edges.size()); ++k) {
      if (x.owner == sol.winner[u] && k != sol.strategy[u])
        continue;
      const GameEdge &e = x.edges[k];
      if (e.move >= 0)
        return true;
      if (!seen[e.target]) {
        seen[e.target] = 1;
        stack.push_back(e.target);
      }
    }
  }
  return false;
}

EvidenceStep step_of(const Lts &lts, int move) {
  const Transition &t = lts.transitions[move];
  return {t.source, t.label, t.target};
}

} // namespace

Evidence extract(const ParityGame &g, const Solution &sol, const Lts &lts, const std::string &formula) {
  Evidence ev;
  ev.formula = formula;
  const Player winner = sol.winner[g.initial];
  ev.holds = winner == Player::Verifier;

  std::vector<int> visited(g.size(), -1); // position in `path`
  std::vector<int> path;
  std::vector<int> moves; // move taken leaving path[i]
  int v = g.initial;
  while (visited[v] < 0) {
    visited[v] = static_cast<int>(path.size());
    path.push_back(v);
    const GameVertex &x = g.vertices[v];
    int k;
    if (x.owner == winner) {
      k = sol.strategy[v];
    } else if (x.edges.size() == 1) {
      k = 0;
    } else {
      if (moves_below(g, sol, v))
        ev.diagnostic = "the " + std::string(player_name(opponent(winner))) + " has " +
                        std::to_string(x.edges.size()) + " options at state " + std::to_string(x.state) +
                        "; only a tree of plays is conclusive, the trace stops there";
      moves.push_back(-1);
      for (std::size_t i = 0; i < moves.size(); ++i)
        if (moves[i] >= 0)
          ev.stem.push_back(step_of(lts, moves[i]));
      return ev;
    }
    moves.push_back(x.edges[k].move);
    v = x.edges[k].target;
  }
  int loop = visited[v];
  for (int i = 0; i < loop; ++i)
    if (moves[i] >= 0)
      ev.stem.push_back(step_of(lts, moves[i]));
  std::vector<EvidenceStep> cycle;
  for (std::size_t i = loop; i < moves.size(); ++i)
    if (moves[i] >= 0)
      cycle.push_back(step_of(lts, moves[i]));
  if (!cycle.empty()) {
    ev.kind = EvidenceKind::Lasso;
    ev.cycle = std::move(cycle);
  }
  return ev;
}

bool replay(const Evidence &ev, const Lts &lts) {
  if (lts.state_count() == 0)
    return false;
  auto walk = [&](const std::vector<EvidenceStep> &steps, int &at) {
    for (const auto &s : steps) {
      if (s.source != at || s.source < 0 || s.source >= static_cast<int>(lts.state_count()))
        return false;
      bool found = std::any_of(lts.outgoing[at].begin(), lts.outgoing[at].end(), [&](int t) {
        return lts.transitions[t].label == s.label && lts.transitions[t].target == s.target;
      });
      if (!found)
        return false;
      at = s.target;
    }
    return true;
  };
  int at = 0;
  if (!walk(ev.stem, at))
    return false;
  if (ev.kind == EvidenceKind::Trace)
    return ev.cycle.empty();
  int start = at;
  return !ev.cycle.empty() && walk(ev.cycle, at) && at == start;
}

void render(const Evidence &ev, std::ostream &out) {
  for (const auto &s : ev.stem)
    out << s.label.text() << "\n";
  if (ev.kind == EvidenceKind::Lasso) {
    out << "-- cycle --\n";
    for (const auto &s : ev.cycle)
      out << s.label.text() << "\n";
  }
  out << "-- verdict: " << (ev.holds ? "holds" : "fails") << " --\n";
}

std::string render(const Evidence &ev) {
  std::ostringstream out;
  render(ev, out);
  return out.str();
}

void render_machine(const Evidence &ev, std::ostream &out) {
  auto emit = [&](const char *part, const std::vector<EvidenceStep> &steps) {
    for (const auto &s : steps) {
      nlohmann::ordered_json j;
      j["part"] = part;
      j["src"] = s.source;
      j["label"] = s.label.text();
      j["dst"] = s.target;
      out << j.dump() << "\n";
    }
  };
  emit("stem", ev.stem);
  emit("cycle", ev.cycle);
  nlohmann::ordered_json j;
  j["verdict"] = ev.holds ? "holds" : "fails";
  j["kind"] = ev.kind == EvidenceKind::Lasso ? "lasso" : "trace";
  if (!ev.diagnostic.empty())
    j["diagnostic"] = ev.diagnostic;
  out << j.dump() << "\n";
}

} // namespace pmx
