#pragma once
// Winning regions by enumerating every positional Verifier strategy. For a fixed
// strategy the Refuter wins from v iff a cycle reachable from v has an odd highest
// priority.

#include <random>
#include <vector>

#include "pmx/game.hpp"

namespace oracle {

inline pmx::ParityGame random_game(std::mt19937 &rng, int max_vertices, int max_priority) {
  pmx::ParityGame g;
  int n = std::uniform_int_distribution<int>(1, max_vertices)(rng);
  g.vertices.resize(n);
  for (auto &v : g.vertices) {
    v.owner = rng() % 2 ? pmx::Player::Verifier : pmx::Player::Refuter;
    v.priority = std::uniform_int_distribution<int>(0, max_priority)(rng);
    int degree = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int k = 0; k < degree; ++k) {
      int t = std::uniform_int_distribution<int>(0, n - 1)(rng);
      bool dup = false;
      for (const auto &e : v.edges)
        dup = dup || e.target == t;
      if (!dup)
        v.edges.push_back({t, -1});
    }
  }
  return g;
}

/// Number of positional Verifier strategies.
inline long long strategy_count(const pmx::ParityGame &g) {
  long long c = 1;
  for (const auto &v : g.vertices)
    if (v.owner == pmx::Player::Verifier)
      c *= static_cast<long long>(v.edges.size());
  return c;
}

// Vertices from which a cycle with odd top priority is reachable in `succ`.
inline std::vector<char> refuter_escapes(const std::vector<std::vector<int>> &succ,
                                         const std::vector<int> &priority) {
  int n = static_cast<int>(succ.size());
  std::vector<char> bad(n, 0);
  for (int p = 1; p < 64; p += 2) {
    // v (priority p) lies on a cycle through vertices of priority <= p.
    for (int v = 0; v < n; ++v) {
      if (priority[v] != p || bad[v])
        continue;
      std::vector<char> seen(n, 0);
      std::vector<int> stack;
      for (int w : succ[v])
        if (priority[w] <= p && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : succ[u])
          if (priority[w] <= p && !seen[w]) {
            seen[w] = 1;
            stack.push_back(w);
          }
      }
      if (seen[v])
        bad[v] = 1;
    }
  }
  // Backward closure: anything that reaches a bad cycle vertex.
  bool grew = true;
  while (grew) {
    grew = false;
    for (int v = 0; v < n; ++v)
      if (!bad[v])
        for (int w : succ[v])
          if (bad[w]) {
            bad[v] = 1;
            grew = true;
            break;
          }
  }
  return bad;
}

inline std::vector<pmx::Player> brute_force_winners(const pmx::ParityGame &g) {
  int n = static_cast<int>(g.size());
  std::vector<int> priority(n), verifier;
  for (int v = 0; v < n; ++v) {
    priority[v] = g.vertices[v].priority;
    if (g.vertices[v].owner == pmx::Player::Verifier)
      verifier.push_back(v);
  }
  std::vector<pmx::Player> win(n, pmx::Player::Refuter);
  std::vector<std::size_t> choice(verifier.size(), 0);
  while (true) {
    std::vector<std::vector<int>> succ(n);
    for (int v = 0; v < n; ++v)
      for (const auto &e : g.vertices[v].edges)
        succ[v].push_back(e.target);
    for (std::size_t k = 0; k < verifier.size(); ++k)
      succ[verifier[k]] = {g.vertices[verifier[k]].edges[choice[k]].target};
    auto bad = refuter_escapes(succ, priority);
    for (int v = 0; v < n; ++v)
      if (!bad[v])
        win[v] = pmx::Player::Verifier;
    std::size_t k = 0;
    while (k < verifier.size() && ++choice[k] == g.vertices[verifier[k]].edges.size())
      choice[k++] = 0;
    if (k == verifier.size())
      break;
  }
  return win;
}

} // namespace oracle
