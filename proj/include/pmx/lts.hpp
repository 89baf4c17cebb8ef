#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "pmx/semantics.hpp"

namespace pmx {

struct Transition {
  int source = 0;
  MultiAction label;
  int target = 0;
};

/// Explicit labelled transition system. State 0 is initial; states are numbered in
/// breadth-first discovery order and each state's transitions are contiguous and
/// sorted by (label text, target canonical text).
struct Lts {
  std::vector<std::string> states; // canonical term text per state
  std::vector<Transition> transitions;
  std::vector<std::vector<int>> outgoing; // transition indices per state
  std::vector<int> deadlocks;             // ascending

  std::size_t state_count() const { return states.size(); }
  std::size_t transition_count() const { return transitions.size(); }
};

struct ExploreConfig {
  SemanticsConfig semantics;
  std::size_t max_states = 1000000;
};

/// Throws Error(StateLimitExceeded) once more than `max_states` states are found.
Lts explore(const Spec &spec, const ExploreConfig &cfg = {});

/// Aldebaran format: `des (0,T,S)` then `(src,"label",dst)` per transition.
void export_aut(const Lts &lts, std::ostream &out);
std::string export_aut(const Lts &lts);

std::vector<int> deadlock_states(const Lts &lts);

} // namespace pmx
