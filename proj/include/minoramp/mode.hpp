#pragma once

#include <string>
#include <vector>

namespace minoramp {

/// Theorem mode enforces the parameter ranges under which every bound is
/// guaranteed and treats a failed bound as a bug. Relaxed mode accepts any
/// positive parameters and reports failed bounds instead.
enum class Mode { Theorem, Relaxed };

inline const char* mode_name(Mode m) { return m == Mode::Theorem ? "theorem" : "relaxed"; }

/// One named inequality checked at an exit point.
struct Check {
  std::string name;
  bool holds = false;
};

inline bool all_hold(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.holds) return false;
  return true;
}

inline std::vector<std::string> failed_checks(const std::vector<Check>& checks) {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.holds) out.push_back(c.name);
  return out;
}

}  // namespace minoramp
