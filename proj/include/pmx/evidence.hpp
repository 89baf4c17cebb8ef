#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pmx/solver.hpp"

namespace pmx {

enum class EvidenceKind { Trace, Lasso };

struct EvidenceStep {
  int source = 0;
  MultiAction label;
  int target = 0;
};

/// A path from state 0 (the stem), optionally followed by a cycle that returns to
/// the stem's last state.
struct Evidence {
  EvidenceKind kind = EvidenceKind::Trace;
  std::vector<EvidenceStep> stem;
  std::vector<EvidenceStep> cycle; // empty iff kind == Trace
  std::string formula;
  bool holds = false;
  /// Empty when the play is fully linear; otherwise explains where it was cut.
  std::string diagnostic;
};

/// Follows the winner's strategy from the initial vertex, keeping the moves along
/// LTS transitions. A play that needs several opponent branches with further LTS
/// moves is cut at that point and a diagnostic is recorded.
Evidence extract(const ParityGame &g, const Solution &sol, const Lts &lts, const std::string &formula = {});

/// True iff every step exists in the LTS and the steps chain from state 0.
bool replay(const Evidence &ev, const Lts &lts);

/// One label per line, `-- cycle --` before the cycle, `-- verdict: <v> --` last.
void render(const Evidence &ev, std::ostream &out);
std::string render(const Evidence &ev);

/// JSON lines: one `{"part","src","label","dst"}` record per step, then a verdict record.
void render_machine(const Evidence &ev, std::ostream &out);

} // namespace pmx
