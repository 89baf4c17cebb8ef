#pragma once
// Trace-level monitors restating the English properties over label sequences.

#include <regex>
#include <string>
#include <vector>

namespace oracle {

/// Process index of `name(k)` inside a multi-action label, or -1.
inline int action_index(const std::string &label, const std::string &name) {
  std::regex re("(^|\\|)" + name + "\\((\\d+)\\)");
  std::smatch m;
  if (std::regex_search(label, m, re))
    return std::stoi(m[2]);
  return -1;
}

/// Two enters without a leave in between.
inline bool violates_mutual_exclusion(const std::vector<std::string> &trace) {
  int inside = 0;
  for (const auto &l : trace) {
    if (action_index(l, "enter") >= 0 && ++inside > 1)
      return true;
    if (action_index(l, "leave") >= 0)
      inside = 0;
  }
  return false;
}

/// Some process wishes and then sees more than `bound` enters of other processes
/// before its own enter.
inline bool violates_overtaking(const std::vector<std::string> &trace, int bound) {
  for (std::size_t k = 0; k < trace.size(); ++k) {
    int i = action_index(trace[k], "wish");
    if (i < 0)
      continue;
    int overtakes = 0;
    for (std::size_t j = k + 1; j < trace.size(); ++j) {
      int e = action_index(trace[j], "enter");
      if (e == i)
        break;
      if (e >= 0 && ++overtakes > bound)
        return true;
    }
  }
  return false;
}

} // namespace oracle
