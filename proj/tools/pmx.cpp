// pmx: explicit-state model checker for process specifications and the modal
// mu-calculus with data. Exit status: 0 holds, 1 fails, 2 tool error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pmx/corpus.hpp"
#include "pmx/game.hpp"

namespace {

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kToolError = 2;

std::map<std::string, pmx::Value> parse_constants(const std::vector<std::string> &defs) {
  std::map<std::string, pmx::Value> out;
  for (const auto &d : defs) {
    auto eq = d.find('=');
    if (eq == std::string::npos || eq == 0)
      throw pmx::Error(pmx::ErrorKind::Parse, "--const expects NAME=VALUE, got '" + d + "'");
    out[d.substr(0, eq)] = pmx::parse_value(d.substr(eq + 1));
  }
  return out;
}

std::ofstream open_out(const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw pmx::Error(pmx::ErrorKind::Io, "cannot write '" + path + "'");
  return out;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Explicit-state model checker for process specifications and the modal mu-calculus"};
  app.require_subcommand(1);

  std::string model, formula, evidence_path, dump_path, aut_path;
  std::vector<std::string> consts;
  std::int64_t quant_bound = 1;
  std::size_t max_states = 1000000, max_vertices = 10000000;
  bool machine = false;

  auto *check = app.add_subcommand("check", "Check a formula on a model");
  check->add_option("model", model, "Model file")->required();
  check->add_option("formula", formula, "Formula file")->required();
  check->add_option("--const", consts, "Formula constant NAME=VALUE");
  check->add_option("--quant-bound", quant_bound, "Largest Nat enumerated by sums and quantifiers")
      ->check(CLI::NonNegativeNumber);
  check->add_option("--evidence", evidence_path, "Write evidence to this file instead of stdout");
  check->add_flag("--machine", machine, "Evidence as JSON lines");
  check->add_option("--dump-game", dump_path, "Write the parity game to this file");
  check->add_option("--max-states", max_states, "State cap")->check(CLI::PositiveNumber);
  check->add_option("--max-vertices", max_vertices, "Game vertex cap")->check(CLI::PositiveNumber);

  auto *explore = app.add_subcommand("explore", "Generate the state space of a model");
  explore->add_option("model", model, "Model file")->required();
  explore->add_option("--out", aut_path, "Write the LTS in Aldebaran format");
  explore->add_option("--quant-bound", quant_bound, "Largest Nat enumerated by sums")
      ->check(CLI::NonNegativeNumber);
  explore->add_option("--max-states", max_states, "State cap")->check(CLI::PositiveNumber);

  auto *corpus = app.add_subcommand("corpus", "Bundled corpus");
  corpus->require_subcommand(1);
  auto *run = corpus->add_subcommand("run", "Run every manifest entry");
  std::string corpus_dir = "corpus", corpus_out;
  run->add_option("--dir", corpus_dir, "Corpus directory holding manifest.json");
  run->add_option("--out", corpus_out, "Directory for .aut exports and evidence files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kToolError;
  }

  try {
    pmx::CheckConfig cfg;
    cfg.quantifiers.bound = quant_bound;
    cfg.max_states = max_states;
    cfg.max_vertices = max_vertices;

    if (*explore) {
      pmx::Spec spec = pmx::load_spec(pmx::read_file(model), model);
      pmx::Lts lts = pmx::explore(spec, cfg);
      if (!aut_path.empty()) {
        auto out = open_out(aut_path);
        pmx::export_aut(lts, out);
      }
      std::cout << "states: " << lts.state_count() << "\n"
                << "transitions: " << lts.transition_count() << "\n"
                << "deadlocks: " << lts.deadlocks.size() << "\n";
      return 0;
    }

    if (*check) {
      cfg.constants = parse_constants(consts);
      pmx::Spec spec = pmx::load_spec(pmx::read_file(model), model);
      pmx::FormPtr f = pmx::load_formula(pmx::read_file(formula), spec, cfg, formula);
      pmx::CheckResult r = pmx::check(spec, *f, cfg);
      if (!dump_path.empty()) {
        auto out = open_out(dump_path);
        pmx::dump_game(*r.game, out);
      }
      std::cout << "verdict: " << (r.holds ? "holds" : "fails") << "\n";
      // Universal successes have no linear witness; failures always get their trace.
      if (!r.holds || r.evidence.diagnostic.empty()) {
        auto write = [&](std::ostream &out) {
          if (machine)
            pmx::render_machine(r.evidence, out);
          else
            pmx::render(r.evidence, out);
        };
        if (evidence_path.empty()) {
          write(std::cout);
        } else {
          auto out = open_out(evidence_path);
          write(out);
        }
        if (!r.evidence.diagnostic.empty())
          std::cerr << "note: " << r.evidence.diagnostic << "\n";
      }
      return r.holds ? kHolds : kFails;
    }

    if (*run) {
      std::optional<std::string> out;
      if (!corpus_out.empty())
        out = corpus_out;
      auto outcomes = pmx::run_corpus(corpus_dir, out, std::cout);
      bool ok = true;
      for (const auto &o : outcomes)
        ok = ok && o.match;
      std::cout << (ok ? "all entries match\n" : "some entries do not match\n");
      return ok ? 0 : 1;
    }
  } catch (const pmx::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kToolError;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kToolError;
  }
  return kToolError;
}
