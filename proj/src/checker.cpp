#include "pmx/checker.hpp"

#include <fstream>
#include <sstream>

#include "pmx/typecheck.hpp"
#include "pmx/unparse.hpp"

namespace pmx {

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::Io, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Spec load_spec(const std::string &text, const std::string &file) {
  ParseOptions opts;
  opts.file = file;
  Spec spec = parse_spec(text, opts);
  typecheck(spec);
  return spec;
}

FormPtr load_formula(const std::string &text, const Spec &spec, const CheckConfig &cfg, const std::string &file) {
  ParseOptions opts;
  opts.file = file;
  opts.constants = cfg.constants;
  FormPtr f = parse_formula(text, opts);
  typecheck(*f, spec);
  return f;
}

Lts explore(const Spec &spec, const CheckConfig &cfg) {
  ExploreConfig ec;
  ec.semantics.quantifiers = cfg.quantifiers;
  ec.max_states = cfg.max_states;
  return explore(spec, ec);
}

CheckResult check(const Spec &spec, const StateFormula &f, const CheckConfig &cfg) {
  return check(std::make_shared<const Lts>(explore(spec, cfg)), f, cfg);
}

CheckResult check(std::shared_ptr<const Lts> lts, const StateFormula &f, const CheckConfig &cfg) {
  CheckResult r;
  r.lts = std::move(lts);
  NormalForm nf = normalize(f);
  InstantiateConfig ic;
  ic.quantifiers = cfg.quantifiers;
  ic.max_vertices = cfg.max_vertices;
  auto game = std::make_shared<const ParityGame>(instantiate(*r.lts, nf, ic));
  r.solution = solve(*game);
  r.solution_verified = verify_solution(*game, r.solution);
  r.holds = r.solution.winner[game->initial] == Player::Verifier;
  r.evidence = extract(*game, r.solution, *r.lts, unparse(f));
  r.game = std::move(game);
  return r;
}

} // namespace pmx
