#include "pmx/game.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <unordered_map>

namespace pmx {

const char *player_name(Player p) { return p == Player::Verifier ? "verifier" : "refuter"; }

namespace {

struct Key {
  int state;
  int node;
  std::vector<Value> values;
  bool operator==(const Key &) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key &k) const {
    return hash_values(k.values, static_cast<std::size_t>(k.state) * 1000003u + static_cast<std::size_t>(k.node));
  }
};

std::string env_text(const Env &env) {
  std::string out;
  for (const auto &[name, value] : env.entries()) {
    if (!out.empty())
      out += ", ";
    out += name + "=" + value.text();
  }
  return out;
}

class Builder {
public:
  Builder(const Lts &lts, const NormalForm &nf, const InstantiateConfig &cfg) : lts_(lts), nf_(nf), cfg_(cfg) {
    // Modal successors are created in order of the target's canonical text, which
    // ranks states the same way for every process index.
    std::vector<int> by_text(lts.state_count());
    for (std::size_t i = 0; i < by_text.size(); ++i)
      by_text[i] = static_cast<int>(i);
    std::sort(by_text.begin(), by_text.end(), [&](int a, int b) { return lts.states[a] < lts.states[b]; });
    text_rank_.resize(by_text.size());
    for (std::size_t i = 0; i < by_text.size(); ++i)
      text_rank_[by_text[i]] = static_cast<int>(i);
    moves_.resize(lts.state_count());
    for (std::size_t s = 0; s < moves_.size(); ++s) {
      moves_[s] = lts.outgoing[s];
      std::stable_sort(moves_[s].begin(), moves_[s].end(), [&](int a, int b) {
        return text_rank_[lts.transitions[a].target] < text_rank_[lts.transitions[b].target];
      });
    }
  }

  ParityGame run() {
    game_.initial = target(0, *nf_.root, Env{});
    while (!queue_.empty()) {
      int v = queue_.front();
      queue_.pop_front();
      expand(v);
    }
    envs_.clear();
    return std::move(game_);
  }

private:
  const Lts &lts_;
  const NormalForm &nf_;
  const InstantiateConfig &cfg_;
  ParityGame game_;
  std::unordered_map<Key, int, KeyHash> index_;
  std::vector<Env> envs_;
  std::deque<int> queue_;
  std::vector<int> text_rank_;
  std::vector<std::vector<int>> moves_;

  int add(Player owner, int priority, int state, int node, Env env) {
    if (game_.vertices.size() >= cfg_.max_vertices)
      throw Error(ErrorKind::InstantiationLimitExceeded,
                  "parity game exceeds " + std::to_string(cfg_.max_vertices) + " vertices");
    int id = static_cast<int>(game_.vertices.size());
    GameVertex v;
    v.owner = owner;
    v.priority = priority;
    v.state = state;
    v.node = node;
    v.env = env_text(env);
    game_.vertices.push_back(std::move(v));
    envs_.push_back(std::move(env));
    return id;
  }

  int terminal(bool value) {
    int &slot = value ? game_.true_vertex : game_.false_vertex;
    if (slot < 0) {
      slot = add(value ? Player::Verifier : Player::Refuter, value ? 0 : 1, -1, -1, Env{});
      game_.vertices[slot].edges.push_back({slot, -1});
    }
    return slot;
  }

  int priority(const NormalFormula &n) const {
    return 2 * (nf_.alternation_levels - n.alternation) + (n.kind == NfKind::Mu ? 1 : 0);
  }

  static Player owner(NfKind k) {
    switch (k) {
    case NfKind::And:
    case NfKind::Forall:
    case NfKind::Box:
      return Player::Refuter;
    default:
      return Player::Verifier;
    }
  }

  int vertex(int state, const NormalFormula &n, const Env &env) {
    const auto &free = n.kind == NfKind::Mu || n.kind == NfKind::Nu ? n.operands[0]->free : n.free;
    // Unification variables of action patterns are free but unbound.
    std::vector<std::string> names;
    for (const auto &name : free)
      if (env.contains(name))
        names.push_back(name);
    Key key{state, n.id, env.project(names)};
    auto it = index_.find(key);
    if (it != index_.end())
      return it->second;
    int prio = n.kind == NfKind::Mu || n.kind == NfKind::Nu ? priority(n) : 0;
    int id = add(owner(n.kind), prio, state, n.id, Env::from(names, key.values));
    index_.emplace(std::move(key), id);
    queue_.push_back(id);
    return id;
  }

  Env enter_fixpoint(const NormalFormula &fix, const Env &env, const std::vector<Value> &args) {
    Env inner = env;
    for (std::size_t i = 0; i < fix.params.size(); ++i)
      inner = inner.bind(fix.params[i].name, args[i].as(fix.params[i].sort));
    return inner;
  }

  // The vertex standing for `n` at `state`; Val, Var, fixpoint entries and
  // decided or singleton junctions resolve without a vertex of their own.
  int target(int state, const NormalFormula &n, const Env &env) {
    switch (n.kind) {
    case NfKind::Val:
      return terminal(eval(*n.expr, env).as_bool());
    case NfKind::And:
    case NfKind::Or: {
      bool conj = n.kind == NfKind::And;
      std::vector<const NormalFormula *> rest;
      for (const auto &op : n.operands) {
        if (op->kind == NfKind::Val) {
          if (eval(*op->expr, env).as_bool() != conj)
            return terminal(!conj);
        } else {
          rest.push_back(op.get());
        }
      }
      if (rest.empty())
        return terminal(conj);
      if (rest.size() == 1)
        return target(state, *rest[0], env);
      return vertex(state, n, env);
    }
    case NfKind::Mu:
    case NfKind::Nu: {
      std::vector<Value> args;
      for (const auto &p : n.params)
        args.push_back(eval(*p.init, env));
      return vertex(state, n, enter_fixpoint(n, env, args));
    }
    case NfKind::Var: {
      const NormalFormula &fix = *nf_.nodes[n.binder];
      std::vector<Value> args;
      for (const auto &a : n.args)
        args.push_back(eval(*a, env));
      return vertex(state, fix, enter_fixpoint(fix, env, args));
    }
    default:
      return vertex(state, n, env);
    }
  }

  void expand(int v) {
    const int state = game_.vertices[v].state;
    const NormalFormula &n = *nf_.nodes[game_.vertices[v].node];
    const Env env = envs_[v];
    std::vector<GameEdge> edges;
    switch (n.kind) {
    case NfKind::And:
    case NfKind::Or:
      for (const auto &op : n.operands)
        if (op->kind != NfKind::Val)
          edges.push_back({target(state, *op, env), -1});
      break;
    case NfKind::Forall:
    case NfKind::Exists:
      for (const Value &value : enumerate(n.sort, cfg_.quantifiers))
        edges.push_back({target(state, *n.operands[0], env.bind(n.name, value)), -1});
      break;
    case NfKind::Box:
    case NfKind::Diamond:
      for (int t : moves_[state]) {
        const Transition &tr = lts_.transitions[t];
        if (match(*n.action, tr.label, env))
          edges.push_back({target(tr.target, *n.operands[0], env), t});
      }
      if (edges.empty())
        edges.push_back({terminal(n.kind == NfKind::Box), -1});
      break;
    case NfKind::Mu:
    case NfKind::Nu:
      edges.push_back({target(state, *n.operands[0], env), -1});
      break;
    default:
      break;
    }
    game_.vertices[v].edges = std::move(edges);
  }
};

} // namespace

ParityGame instantiate(const Lts &lts, const NormalForm &nf, const InstantiateConfig &cfg) {
  return Builder(lts, nf, cfg).run();
}

void dump_game(const ParityGame &g, std::ostream &out) {
  out << "parity " << g.size() << " initial " << g.initial << "\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    const GameVertex &v = g.vertices[i];
    out << i << ' ' << (v.owner == Player::Verifier ? 'V' : 'R') << ' ' << v.priority << ' ';
    for (std::size_t k = 0; k < v.edges.size(); ++k)
      out << (k ? "," : "") << v.edges[k].target;
    out << " ; s=" << v.state << " f=" << v.node;
    if (!v.env.empty())
      out << ' ' << v.env;
    out << "\n";
  }
}

} // namespace pmx
