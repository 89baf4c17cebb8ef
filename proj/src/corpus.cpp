#include "pmx/corpus.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

#include <json.hpp>

namespace pmx {

namespace fs = std::filesystem;

namespace {

Value json_value(const nlohmann::json &j, const std::string &where) {
  if (j.is_boolean())
    return Value::boolean(j.get<bool>());
  if (j.is_number_integer())
    return Value::integer(j.get<std::int64_t>());
  if (j.is_string())
    return parse_value(j.get<std::string>());
  throw Error(ErrorKind::Parse, "constant '" + where + "' must be a boolean or an integer");
}

std::string safe_name(const std::string &name) {
  std::string out = name;
  for (char &c : out)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.'))
      c = '_';
  return out;
}

void write_file(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << text;
}

} // namespace

std::vector<CorpusEntry> load_manifest(const std::string &path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
  std::vector<CorpusEntry> entries;
  try {
    for (const auto &j : doc.at("entries")) {
      CorpusEntry e;
      e.name = j.at("name").get<std::string>();
      e.model = j.at("model").get<std::string>();
      e.property = j.at("property").get<std::string>();
      std::string expect = j.at("expect").get<std::string>();
      if (expect != "holds" && expect != "fails")
        throw Error(ErrorKind::Parse, e.name + ": expect must be 'holds' or 'fails'");
      e.expect_holds = expect == "holds";
      if (j.contains("evidence")) {
        std::string kind = j.at("evidence").get<std::string>();
        if (kind != "trace" && kind != "lasso")
          throw Error(ErrorKind::Parse, e.name + ": evidence must be 'trace' or 'lasso'");
        e.expect_evidence = kind == "lasso" ? EvidenceKind::Lasso : EvidenceKind::Trace;
      }
      if (j.contains("constants"))
        for (const auto &[name, value] : j.at("constants").items())
          e.constants[name] = json_value(value, name);
      if (j.contains("quant_bound"))
        e.quant_bound = j.at("quant_bound").get<std::int64_t>();
      entries.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
  return entries;
}

std::vector<CorpusOutcome> run_corpus(const std::string &dir, const std::optional<std::string> &out_dir,
                                      std::ostream &table) {
  const fs::path root(dir);
  std::vector<CorpusEntry> entries = load_manifest((root / "manifest.json").string());
  if (out_dir)
    fs::create_directories(*out_dir);

  table << std::left << std::setw(48) << "entry" << std::setw(8) << "expect" << std::setw(8) << "actual"
        << std::setw(14) << "evidence" << "result\n";
  std::vector<CorpusOutcome> outcomes;
  std::map<std::string, bool> exported;
  for (const auto &entry : entries) {
    CorpusOutcome o;
    o.entry = entry;
    try {
      CheckConfig cfg;
      cfg.quantifiers.bound = entry.quant_bound;
      cfg.constants = entry.constants;
      std::string model_path = (root / entry.model).string();
      std::string prop_path = (root / entry.property).string();
      Spec spec = load_spec(read_file(model_path), model_path);
      FormPtr f = load_formula(read_file(prop_path), spec, cfg, prop_path);
      CheckResult r = check(spec, *f, cfg);
      o.holds = r.holds;
      o.evidence = r.evidence.kind;
      o.evidence_steps = r.evidence.stem.size() + r.evidence.cycle.size();
      o.replayed = replay(r.evidence, *r.lts);
      o.match = o.holds == entry.expect_holds && o.replayed && r.solution_verified &&
                (!entry.expect_evidence || *entry.expect_evidence == o.evidence);
      if (out_dir) {
        std::string key = entry.model + "#" + std::to_string(entry.quant_bound);
        if (!exported[key]) {
          exported[key] = true;
          write_file(fs::path(*out_dir) / (safe_name(fs::path(entry.model).stem().string() + "_b" +
                                                     std::to_string(entry.quant_bound)) + ".aut"),
                     export_aut(*r.lts));
        }
        write_file(fs::path(*out_dir) / (safe_name(entry.name) + ".evidence"), render(r.evidence));
      }
    } catch (const Error &e) {
      o.error = e.what();
    }
    std::string evidence = "-";
    if (o.error.empty())
      evidence = std::string(o.evidence == EvidenceKind::Lasso ? "lasso" : "trace") + "/" +
                 std::to_string(o.evidence_steps);
    table << std::setw(48) << entry.name << std::setw(8) << (entry.expect_holds ? "holds" : "fails")
          << std::setw(8) << (o.error.empty() ? (o.holds ? "holds" : "fails") : "error") << std::setw(14)
          << evidence << (o.match ? "ok" : "MISMATCH") << "\n";
    if (!o.error.empty())
      table << "  " << o.error << "\n";
    outcomes.push_back(std::move(o));
  }
  return outcomes;
}

} // namespace pmx
