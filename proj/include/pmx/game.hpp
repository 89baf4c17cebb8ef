#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "pmx/lts.hpp"
#include "pmx/normal.hpp"

namespace pmx {

/// Verifier wins plays whose highest infinitely recurring priority is even.
enum class Player { Verifier, Refuter };

inline Player opponent(Player p) { return p == Player::Verifier ? Player::Refuter : Player::Verifier; }
const char *player_name(Player p);

struct GameEdge {
  int target = 0;
  int move = -1; // LTS transition taken along this edge, or -1
};

struct GameVertex {
  Player owner = Player::Verifier;
  int priority = 0;
  std::vector<GameEdge> edges; // never empty
  int state = -1;              // LTS state, -1 for terminals
  int node = -1;               // NormalForm node id, -1 for terminals
  std::string env;             // data valuation, e.g. `i=0, n=1`
};

struct ParityGame {
  std::vector<GameVertex> vertices;
  int initial = 0;
  int true_vertex = -1; // -1 when absent
  int false_vertex = -1;

  std::size_t size() const { return vertices.size(); }
};

struct InstantiateConfig {
  QuantifierConfig quantifiers;
  std::size_t max_vertices = 10000000;
};

/// Builds the game for `nf` on `lts`, starting at (state 0, root). Vertices are
/// numbered in creation order of a breadth-first expansion. Throws
/// Error(InstantiationLimitExceeded) when the vertex cap is exceeded.
ParityGame instantiate(const Lts &lts, const NormalForm &nf, const InstantiateConfig &cfg = {});

/// Text dump: a header `parity <n> initial <i>` then one line per vertex:
/// `<id> <V|R> <priority> <succ>,<succ>,... ; s=<state> f=<node> <env>`.
void dump_game(const ParityGame &g, std::ostream &out);

} // namespace pmx
