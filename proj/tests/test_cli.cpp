#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <sys/wait.h>

#include "oracle/aut_parser.hpp"
#include "support.hpp"

#ifndef PMX_BINARY
#error "PMX_BINARY must name the command-line tool"
#endif

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

/// Runs the tool with `args` (already shell-quoted where needed).
Run pmx_run(const std::string &args) {
  static int counter = 0;
  fs::path err = fs::temp_directory_path() / ("pmx_cli_err_" + std::to_string(::getpid()) + "_" +
                                              std::to_string(counter++));
  std::string cmd = std::string(PMX_BINARY) + " " + args + " 2>" + err.string();
  Run r;
  FILE *pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), n);
  int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(err);
  r.err.assign(std::istreambuf_iterator<char>(in), {});
  fs::remove(err);
  return r;
}

std::string model(const std::string &name) { return support::corpus("models/" + name + ".pmx"); }
std::string prop(const std::string &name) { return support::corpus("properties/" + name + ".mcf"); }

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("pmx_cli_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string &name, const std::string &content = {}) const {
    fs::path p = path / name;
    if (!content.empty()) {
      std::ofstream out(p);
      out << content;
    }
    return p.string();
  }
};

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("check exit codes follow the verdict") {
  Run fails = pmx_run("check " + model("naive") + " " + prop("mutual_exclusion"));
  CHECK(fails.code == 1);
  CHECK(fails.out.rfind("verdict: fails\n", 0) == 0);
  CHECK(fails.out.find("-- verdict: fails --") != std::string::npos);
  CHECK(fails.err.empty());

  Run holds = pmx_run("check " + model("dekker") + " " + prop("mutual_exclusion"));
  CHECK(holds.code == 0);
  CHECK(holds.out == "verdict: holds\n");

  Run b2 = pmx_run("check " + model("peterson") + " " + prop("bounded_overtaking") + " --const B=2");
  CHECK(b2.code == 0);
  Run b1 = pmx_run("check " + model("peterson") + " " + prop("bounded_overtaking") + " --const B=1");
  CHECK(b1.code == 1);
}

TEST_CASE("evidence can go to a file, also as JSON lines") {
  TempDir dir;
  std::string path = dir.file("naive.evidence");
  Run r = pmx_run("check " + model("naive") + " " + prop("mutual_exclusion") + " --evidence " + path);
  CHECK(r.code == 1);
  CHECK(r.out == "verdict: fails\n");
  std::string text = slurp(path);
  CHECK(text == "get_flag(1,false)\nget_flag(0,false)\nset_flag(0,true)\nenter(0)\nset_flag(1,true)\nenter(1)\n"
               "-- verdict: fails --\n");

  std::string json = dir.file("naive.jsonl");
  Run m = pmx_run("check " + model("naive") + " " + prop("mutual_exclusion") + " --machine --evidence " + json);
  CHECK(m.code == 1);
  std::string lines = slurp(json);
  CHECK(std::count(lines.begin(), lines.end(), '\n') == 7);
  CHECK(lines.find("{\"part\":\"stem\",\"src\":0,\"label\":\"get_flag(1,false)\"") == 0);
}

TEST_CASE("tool errors exit with 2 and report on the error stream") {
  TempDir dir;
  Run missing = pmx_run("check " + dir.file("nope.pmx") + " " + prop("mutual_exclusion"));
  CHECK(missing.code == 2);
  CHECK(missing.out.empty());
  CHECK_FALSE(missing.err.empty());

  std::string bad = dir.file("bad.pmx", "act a;\ninit a . ;\n");
  Run parse = pmx_run("check " + bad + " " + prop("mutual_exclusion"));
  CHECK(parse.code == 2);
  CHECK(parse.out.empty());
  CHECK(parse.err.find(":2:") != std::string::npos);

  std::string typed = dir.file("typed.mcf", "val(true + 1)");
  Run type = pmx_run("check " + model("naive") + " " + typed);
  CHECK(type.code == 2);
  CHECK(type.out.empty());

  Run unbound = pmx_run("check " + model("peterson") + " " + prop("bounded_overtaking"));
  CHECK(unbound.code == 2); // B is not defined

  Run usage = pmx_run("check " + model("naive"));
  CHECK(usage.code == 2);
  Run cap = pmx_run("explore " + model("dekker") + " --max-states 5");
  CHECK(cap.code == 2);
  CHECK(cap.out.empty());

  Run help = pmx_run("--help");
  CHECK(help.code == 0);
}

TEST_CASE("explore prints sizes and writes the LTS") {
  TempDir dir;
  std::string aut = dir.file("improved.aut");
  Run r = pmx_run("explore " + model("improved") + " --out " + aut);
  CHECK(r.code == 0);
  CHECK(r.out == "states: 16\ntransitions: 24\ndeadlocks: 1\n");
  oracle::Aut parsed = oracle::parse_aut(slurp(aut));
  CHECK(parsed.states == 16);
  CHECK(parsed.transitions == 24);

  std::string delta = dir.file("delta.pmx", "init delta;\n");
  std::string delta_aut = dir.file("delta.aut");
  Run d = pmx_run("explore " + delta + " --out " + delta_aut);
  CHECK(d.code == 0);
  CHECK(slurp(delta_aut) == "des (0,0,1)\n");

  Run dekker = pmx_run("explore " + model("dekker"));
  CHECK(dekker.out == "states: 114\ntransitions: 206\ndeadlocks: 0\n");
}

TEST_CASE("dumped games use the documented line format") {
  TempDir dir;
  std::string dump = dir.file("game.txt");
  Run r = pmx_run("check " + model("improved") + " " + prop("mutual_exclusion") + " --dump-game " + dump);
  CHECK(r.code == 0);
  std::istringstream in(slurp(dump));
  std::string header;
  std::getline(in, header);
  std::smatch m;
  REQUIRE(std::regex_match(header, m, std::regex(R"(parity (\d+) initial (\d+))")));
  std::size_t count = std::stoul(m[1]);
  std::size_t lines = 0;
  std::string line;
  std::regex vertex(R"((\d+) (V|R) (\d+) (\d+(,\d+)*) ; s=(-?\d+) f=(-?\d+).*)");
  while (std::getline(in, line)) {
    CAPTURE(line);
    REQUIRE(std::regex_match(line, m, vertex));
    CHECK(std::stoul(m[1]) == lines);
    ++lines;
  }
  CHECK(lines == count);
}

TEST_CASE("corpus run reports mismatches through its exit code") {
  TempDir dir;
  fs::create_directories(dir.path / "models");
  fs::create_directories(dir.path / "properties");
  fs::copy_file(model("improved"), dir.path / "models/improved.pmx");
  fs::copy_file(prop("mutual_exclusion"), dir.path / "properties/mutual_exclusion.mcf");
  fs::copy_file(prop("always_eventually_request"), dir.path / "properties/always_eventually_request.mcf");
  std::string entries = R"({"entries": [
    {"name": "improved/mutual_exclusion", "model": "models/improved.pmx",
     "property": "properties/mutual_exclusion.mcf", "expect": "holds"},
    {"name": "improved/request", "model": "models/improved.pmx",
     "property": "properties/always_eventually_request.mcf", "expect": "fails", "evidence": "trace"}]})";
  dir.file("manifest.json", entries);
  std::string out = (dir.path / "out").string();
  Run ok = pmx_run("corpus run --dir " + dir.path.string() + " --out " + out);
  CHECK(ok.code == 0);
  CHECK(ok.out.find("all entries match") != std::string::npos);
  CHECK(ok.out.find("MISMATCH") == std::string::npos);
  CHECK(fs::exists(fs::path(out) / "improved_b1.aut"));
  CHECK(slurp((fs::path(out) / "improved_b1.aut").string()).rfind("des (0,24,16)\n", 0) == 0);

  std::string flipped = entries;
  flipped.replace(flipped.find("\"holds\""), 7, "\"fails\"");
  dir.file("manifest.json", flipped);
  Run bad = pmx_run("corpus run --dir " + dir.path.string());
  CHECK(bad.code == 1);
  CHECK(bad.out.find("some entries do not match") != std::string::npos);
  std::istringstream lines(bad.out);
  std::string line;
  int mismatches = 0;
  while (std::getline(lines, line))
    if (line.find("MISMATCH") != std::string::npos) {
      ++mismatches;
      CHECK(line.find("improved/mutual_exclusion") != std::string::npos);
    }
  CHECK(mismatches == 1);
}

} // TEST_SUITE
