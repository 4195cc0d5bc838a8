#pragma once

#include <string>
#include <vector>

#include "geocheck/core/logic.hpp"

namespace geocheck {

struct Hypothesis {
  std::string name;
  FormulaPtr formula;
  /// Named by the engine; a user-chosen name may shadow it.
  bool automatic = false;
};

/// Typed variables and named hypotheses of one goal.
struct GoalContext {
  std::vector<Binder> vars;
  std::vector<Hypothesis> hyps;
  /// Next index for auto-generated hypothesis names.
  std::size_t next_auto = 0;

  bool has_var(const std::string& name) const {
    for (const auto& v : vars)
      if (v.name == name) return true;
    return false;
  }
  const Hypothesis* find_hyp(const std::string& name) const {
    for (const auto& h : hyps)
      if (h.name == name) return &h;
    return nullptr;
  }
  Hypothesis* find_hyp(const std::string& name) {
    for (auto& h : hyps)
      if (h.name == name) return &h;
    return nullptr;
  }
};

}  // namespace geocheck
