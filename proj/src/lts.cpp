#include "pmx/lts.hpp"

#include <deque>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace pmx {

Lts explore(const Spec &spec, const ExploreConfig &cfg) {
  Semantics sem(spec, cfg.semantics);
  Lts lts;
  std::unordered_map<Semantics::State, int> number;
  std::vector<Semantics::State> order;

  auto discover = [&](Semantics::State s) {
    auto [it, fresh] = number.emplace(s, static_cast<int>(order.size()));
    if (fresh) {
      if (order.size() >= cfg.max_states)
        throw Error(ErrorKind::StateLimitExceeded,
                    "state space exceeds " + std::to_string(cfg.max_states) + " states");
      order.push_back(s);
      lts.states.push_back(sem.canonical(s));
    }
    return it->second;
  };

  discover(sem.initial());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto &succ = sem.step(order[i]);
    lts.outgoing.emplace_back();
    if (succ.empty())
      lts.deadlocks.push_back(static_cast<int>(i));
    for (const auto &[label, target] : succ) {
      int t = discover(target);
      lts.outgoing[i].push_back(static_cast<int>(lts.transitions.size()));
      lts.transitions.push_back({static_cast<int>(i), label, t});
    }
  }
  return lts;
}

void export_aut(const Lts &lts, std::ostream &out) {
  out << "des (0," << lts.transition_count() << ',' << lts.state_count() << ")\n";
  for (const auto &t : lts.transitions)
    out << '(' << t.source << ",\"" << t.label.text() << "\"," << t.target << ")\n";
}

std::string export_aut(const Lts &lts) {
  std::ostringstream out;
  export_aut(lts, out);
  return out.str();
}

std::vector<int> deadlock_states(const Lts &lts) {
  std::vector<int> out;
  for (std::size_t i = 0; i < lts.outgoing.size(); ++i)
    if (lts.outgoing[i].empty())
      out.push_back(static_cast<int>(i));
  return out;
}

} // namespace pmx
