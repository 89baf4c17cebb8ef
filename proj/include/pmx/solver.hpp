#pragma once

#include <vector>

#include "pmx/game.hpp"

namespace pmx {

struct Solution {
  std::vector<Player> winner;
  /// Edge index chosen at each vertex owned by its winner; -1 elsewhere.
  std::vector<int> strategy;
};

/// Recursive (Zielonka) solver. Among winning moves, prefers the successor with the
/// smallest attractor distance, then the smallest vertex id.
Solution solve(const ParityGame &g);

/// Independent check: regions are closed under the strategies and every cycle the
/// winner cannot avoid has the winner's parity.
bool verify_solution(const ParityGame &g, const Solution &sol);

} // namespace pmx
