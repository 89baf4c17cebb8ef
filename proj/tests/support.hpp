#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "pmx/checker.hpp"

#ifndef PMX_CORPUS_DIR
#error "PMX_CORPUS_DIR must point at the corpus directory"
#endif

namespace support {

inline std::string corpus(const std::string &rel) { return std::string(PMX_CORPUS_DIR) + "/" + rel; }

inline pmx::Spec model(const std::string &name) {
  std::string path = corpus("models/" + name + ".pmx");
  return pmx::load_spec(pmx::read_file(path), path);
}

inline pmx::FormPtr property(const std::string &name, const pmx::Spec &spec, const pmx::CheckConfig &cfg = {}) {
  std::string path = corpus("properties/" + name + ".mcf");
  return pmx::load_formula(pmx::read_file(path), spec, cfg, path);
}

inline pmx::FormPtr formula(const std::string &text, const pmx::Spec &spec, const pmx::CheckConfig &cfg = {}) {
  return pmx::load_formula(text, spec, cfg);
}

inline pmx::CheckConfig with_const(const std::string &name, std::int64_t v) {
  pmx::CheckConfig cfg;
  cfg.constants[name] = pmx::Value::nat(v);
  return cfg;
}

inline std::vector<std::string> labels(const std::vector<pmx::EvidenceStep> &steps) {
  std::vector<std::string> out;
  for (const auto &s : steps)
    out.push_back(s.label.text());
  return out;
}

/// Multi-action with its parts in canonical (sorted) order, e.g. for labels
/// written `wish(0)|set_flag(0,true)`; spaces are dropped.
inline std::string sorted_label(const std::string &label) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : label) {
    if (c == ' ')
      continue;
    if (c == '|') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i)
    out += (i ? "|" : "") + parts[i];
  return out;
}

inline std::vector<std::string> sorted_labels(const std::vector<std::string> &trace) {
  std::vector<std::string> out;
  for (const auto &l : trace)
    out.push_back(sorted_label(l));
  return out;
}

/// First n letters of the infinite word stem.cycle^omega.
inline std::vector<std::string> unroll(const std::vector<std::string> &stem, const std::vector<std::string> &cycle,
                                       std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < n; ++k)
    out.push_back(k < stem.size() ? stem[k] : cycle[(k - stem.size()) % cycle.size()]);
  return out;
}

/// Exchanges process indices 0 and 1 in a label such as `set_flag(0,true)|wish(0)`
/// and re-sorts its instances.
inline std::string swap01(const std::string &label) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : label) {
    if (c == '|') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  for (auto &p : parts) {
    auto open = p.find('(');
    if (open == std::string::npos)
      continue;
    auto end = p.find_first_of(",)", open);
    std::string first = p.substr(open + 1, end - open - 1);
    if (first == "0" || first == "1")
      p = p.substr(0, open + 1) + (first == "0" ? "1" : "0") + p.substr(end);
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i)
    out += (i ? "|" : "") + parts[i];
  return out;
}

inline std::vector<std::string> swap01(const std::vector<std::string> &trace) {
  std::vector<std::string> out;
  for (const auto &l : trace)
    out.push_back(swap01(l));
  return out;
}

} // namespace support
