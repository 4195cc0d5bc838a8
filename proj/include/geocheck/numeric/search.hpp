#pragma once

// Seeded sampling of coordinate assignments that satisfy a statement's
// hypotheses, and the counterexample search built on it.

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "geocheck/numeric/model.hpp"
#include "geocheck/theory/theory.hpp"

namespace geocheck {

/// Proposes assignments for a list of variables, guided by hypothesis atoms.
/// Objects pinned down by a hypothesis (a midpoint, a foot, the line through
/// two placed points, ...) are constructed; the rest are drawn at random.
class HypothesisSampler {
 public:
  /// `hyps` may contain definition atoms; they are unfolded through `defs`
  /// for pattern discovery only.
  HypothesisSampler(std::vector<Binder> vars, const FormulaPtr& hyps, const DefinitionRegistry& defs,
                    std::uint64_t seed);

  Assignment next();

 private:
  std::vector<Binder> vars_;
  std::vector<FormulaPtr> atoms_;
  const DefinitionRegistry& defs_;
  std::mt19937_64 rng_;
};

struct SearchResult {
  std::optional<Assignment> counterexample;
  std::size_t trials = 0;
  /// Trials whose hypotheses held.
  std::size_t satisfied = 0;
  /// Trials discarded for degenerate configurations (zero-length rays,
  /// side tests on a point lying on the line).
  std::size_t degenerate = 0;

  bool vacuous() const { return satisfied == 0; }
};

/// Looks for an assignment satisfying `statement.premise` but not its
/// conclusion, over `cfg.trials` seeded samples.
SearchResult search_counterexample(const Rule& statement, const DefinitionRegistry& defs, const EvalConfig& cfg = {});

/// Human-readable coordinates, one object per line.
std::string describe(const Assignment& a);

}  // namespace geocheck
