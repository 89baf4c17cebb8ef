#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pmx/checker.hpp"

namespace pmx {

struct CorpusEntry {
  std::string name;
  std::string model;    // relative to the corpus directory
  std::string property; // relative to the corpus directory
  std::map<std::string, Value> constants;
  std::int64_t quant_bound = 1;
  bool expect_holds = false;
  std::optional<EvidenceKind> expect_evidence; // checked when present
};

struct CorpusOutcome {
  CorpusEntry entry;
  bool holds = false;
  EvidenceKind evidence = EvidenceKind::Trace;
  std::size_t evidence_steps = 0;
  bool replayed = false;
  bool match = false;
  std::string error; // nonempty on tool errors
};

/// Reads `manifest.json`:
/// `{"entries": [{"name", "model", "property", "expect": "holds"|"fails",
///   "evidence"?: "trace"|"lasso", "constants"?: {...}, "quant_bound"?: n}]}`.
std::vector<CorpusEntry> load_manifest(const std::string &path);

/// Runs every entry of `dir`/manifest.json and prints a verdict table. When
/// `out_dir` is given, writes one `.aut` per model and one evidence file per entry.
std::vector<CorpusOutcome> run_corpus(const std::string &dir, const std::optional<std::string> &out_dir,
                                      std::ostream &table);

} // namespace pmx
