#include "pmx/solver.hpp"

#include <algorithm>
#include <climits>
#include <deque>

namespace pmx {

namespace {

Player parity_owner(int priority) { return priority % 2 == 0 ? Player::Verifier : Player::Refuter; }

class Zielonka {
public:
  explicit Zielonka(const ParityGame &g) : g_(g), n_(static_cast<int>(g.size())) {
    preds_.resize(n_);
    for (int v = 0; v < n_; ++v)
      for (const auto &e : g.vertices[v].edges)
        preds_[e.target].push_back(v);
    for (auto &p : preds_) {
      std::sort(p.begin(), p.end());
      p.erase(std::unique(p.begin(), p.end()), p.end());
    }
    sol_.winner.assign(n_, Player::Verifier);
    sol_.strategy.assign(n_, -1);
  }

  Solution run() {
    std::vector<int> all(n_);
    for (int v = 0; v < n_; ++v)
      all[v] = v;
    solve(all);
    return std::move(sol_);
  }

private:
  const ParityGame &g_;
  int n_;
  std::vector<std::vector<int>> preds_;
  Solution sol_;

  struct Attractor {
    std::vector<int> members;
    std::vector<int> rank; // indexed by vertex, INT_MAX outside
  };

  // Attractor of `target` for `p` inside `inside`; sets p's strategy on attracted
  // vertices to the successor of least rank, then least id.
  Attractor attract(const std::vector<char> &inside, const std::vector<int> &target, Player p) {
    Attractor a;
    a.rank.assign(n_, INT_MAX);
    std::vector<int> count(n_, 0);
    std::deque<int> queue;
    for (int v : target) {
      a.rank[v] = 0;
      a.members.push_back(v);
      queue.push_back(v);
    }
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int v : preds_[u]) {
        if (!inside[v] || a.rank[v] != INT_MAX)
          continue;
        bool take = g_.vertices[v].owner == p;
        if (!take) {
          if (count[v] == 0)
            for (const auto &e : g_.vertices[v].edges)
              count[v] += inside[e.target] ? 1 : 0;
          take = --count[v] == 0;
        }
        if (take) {
          a.rank[v] = a.rank[u] + 1;
          a.members.push_back(v);
          queue.push_back(v);
        }
      }
    }
    for (int v : a.members)
      if (a.rank[v] > 0 && g_.vertices[v].owner == p)
        sol_.strategy[v] = best_edge(v, [&](int t) { return a.rank[t]; });
    return a;
  }

  template <class Rank> int best_edge(int v, Rank rank) {
    const auto &edges = g_.vertices[v].edges;
    int best = -1;
    for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
      int r = rank(edges[k].target);
      if (r == INT_MAX)
        continue;
      if (best < 0 || r < rank(edges[best].target) ||
          (r == rank(edges[best].target) && edges[k].target < edges[best].target))
        best = k;
    }
    return best;
  }

  std::vector<char> mask(const std::vector<int> &vs) const {
    std::vector<char> m(n_, 0);
    for (int v : vs)
      m[v] = 1;
    return m;
  }

  static std::vector<int> minus(const std::vector<int> &vs, const std::vector<char> &removed) {
    std::vector<int> out;
    for (int v : vs)
      if (!removed[v])
        out.push_back(v);
    return out;
  }

  // Solves the subgame on `U` (a trap for both players' moves), writing winners and
  // strategies for its vertices.
  void solve(const std::vector<int> &U) {
    if (U.empty())
      return;
    int top = 0;
    for (int v : U)
      top = std::max(top, g_.vertices[v].priority);
    Player alpha = parity_owner(top);
    std::vector<int> A;
    for (int v : U)
      if (g_.vertices[v].priority == top)
        A.push_back(v);
    std::vector<char> inside = mask(U);
    Attractor X = attract(inside, A, alpha);
    std::vector<int> rest = minus(U, mask(X.members));
    solve(rest);
    std::vector<int> lost;
    for (int v : rest)
      if (sol_.winner[v] != alpha)
        lost.push_back(v);
    if (lost.empty()) {
      for (int v : X.members)
        sol_.winner[v] = alpha;
      for (int v : U) {
        if (g_.vertices[v].owner != alpha)
          sol_.strategy[v] = -1;
        else if (X.rank[v] == 0)
          sol_.strategy[v] = best_edge(v, [&](int t) { return inside[t] ? X.rank[t] : INT_MAX; });
        // Successors outside X rank below any edge leaving U.
        if (g_.vertices[v].owner == alpha && sol_.strategy[v] < 0)
          sol_.strategy[v] = best_edge(v, [&](int t) { return inside[t] ? 0 : INT_MAX; });
      }
      return;
    }
    Player beta = opponent(alpha);
    Attractor B = attract(inside, lost, beta);
    for (int v : B.members) {
      sol_.winner[v] = beta;
      if (g_.vertices[v].owner != beta)
        sol_.strategy[v] = -1;
    }
    solve(minus(U, mask(B.members)));
  }
};

// Tarjan's algorithm, iterative. Returns the component id per vertex (-1 outside
// `inside`) and whether each component contains a cycle.
struct Sccs {
  std::vector<int> comp;
  std::vector<char> cyclic;
};

Sccs tarjan(const std::vector<std::vector<int>> &succ, const std::vector<char> &inside) {
  int n = static_cast<int>(succ.size());
  Sccs out;
  out.comp.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<char> on(n, 0);
  int counter = 0;
  for (int root = 0; root < n; ++root) {
    if (!inside[root] || index[root] >= 0)
      continue;
    std::vector<std::pair<int, std::size_t>> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on[root] = 1;
    while (!call.empty()) {
      auto &[v, k] = call.back();
      if (k < succ[v].size()) {
        int w = succ[v][k++];
        if (!inside[w])
          continue;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on[w] = 1;
          call.push_back({w, 0});
        } else if (on[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      int finished = v;
      call.pop_back();
      if (!call.empty())
        low[call.back().first] = std::min(low[call.back().first], low[finished]);
      if (low[finished] == index[finished]) {
        int id = static_cast<int>(out.cyclic.size());
        int size = 0;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on[w] = 0;
          out.comp[w] = id;
          ++size;
        } while (w != finished);
        bool self = std::find(succ[finished].begin(), succ[finished].end(), finished) != succ[finished].end();
        out.cyclic.push_back(size > 1 || self);
      }
    }
  }
  return out;
}

} // namespace

Solution solve(const ParityGame &g) { return Zielonka(g).run(); }

bool verify_solution(const ParityGame &g, const Solution &sol) {
  int n = static_cast<int>(g.size());
  if (static_cast<int>(sol.winner.size()) != n || static_cast<int>(sol.strategy.size()) != n)
    return false;
  // Strategy-restricted successor relation; closure of both regions.
  std::vector<std::vector<int>> succ(n);
  for (int v = 0; v < n; ++v) {
    const GameVertex &x = g.vertices[v];
    if (x.owner == sol.winner[v]) {
      int k = sol.strategy[v];
      if (k < 0 || k >= static_cast<int>(x.edges.size()))
        return false;
      if (sol.winner[x.edges[k].target] != sol.winner[v])
        return false;
      succ[v].push_back(x.edges[k].target);
    } else {
      for (const auto &e : x.edges) {
        if (sol.winner[e.target] != sol.winner[v])
          return false;
        succ[v].push_back(e.target);
      }
    }
  }
  int top = 0;
  for (const auto &x : g.vertices)
    top = std::max(top, x.priority);
  for (Player p : {Player::Verifier, Player::Refuter}) {
    // A cycle inside p's region whose highest priority has the wrong parity.
    for (int bad = (p == Player::Verifier ? 1 : 0); bad <= top; bad += 2) {
      std::vector<char> inside(n, 0);
      for (int v = 0; v < n; ++v)
        inside[v] = sol.winner[v] == p && g.vertices[v].priority <= bad;
      Sccs s = tarjan(succ, inside);
      for (int v = 0; v < n; ++v)
        if (inside[v] && g.vertices[v].priority == bad && s.cyclic[s.comp[v]])
          return false;
    }
  }
  return true;
}

} // namespace pmx
