#pragma once

// Proof states and tactic interpretation. Every semantic question is handed to
// the entailment callback; the engine itself only manipulates syntax.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "geocheck/core/context.hpp"
#include "geocheck/dsl/syntax.hpp"
#include "geocheck/smt/solver.hpp"

namespace geocheck {

struct ProofGoal {
  GoalContext context;
  FormulaPtr target;
};

struct TraceEntry {
  std::size_t tactic_index = 0;
  std::string tactic;
  /// Rendered obligation.
  std::string obligation;
  SolverVerdict verdict;
  /// Apply whose arguments were completed by inference.
  bool inferred = false;
  /// Speculative call made while searching for arguments.
  bool probe = false;
  std::string note;
};

struct ProofState {
  /// Top of the stack is the back.
  std::vector<ProofGoal> goals;
  std::vector<TraceEntry> trace;

  bool complete() const { return goals.empty(); }
};

struct EngineServices {
  /// Rule resolution bound to the library position of the theorem.
  std::function<Rule(const std::string&)> lookup;
  /// Decides context |= goal. `label` identifies the obligation for dumps;
  /// `probe` marks speculative calls made during argument inference.
  std::function<SolverVerdict(const GoalContext&, const FormulaPtr&, const std::string& label, bool probe)> entails;
  /// Optional definition unfolding, used only to pick likely inference
  /// candidates.
  std::function<FormulaPtr(const FormulaPtr&)> expand;
  /// Prefix for obligation labels, usually the theorem name.
  std::string label;
  /// Maximum number of candidate argument lists tried by inference.
  std::size_t inference_bound = 5000;
};

ProofState init_state(const Rule& theorem);

// Single tactics on the active goal. On failure they throw geocheck::Error and
// leave the state as it was before the call, except for the trace.
void tac_intros(ProofState& state);
void tac_apply(ProofState& state, const TacticNode& node, const EngineServices& services, std::size_t index = 0);
void tac_finish(ProofState& state, const EngineServices& services, std::size_t index = 0);
/// Assert, Have, ByCases, ByContra, Use, SplitGoal, CasesHyp. Branch bodies
/// are run through `run`, which receives the preorder index of the branch's
/// first node.
void tac_structural(ProofState& state, const TacticNode& node, const EngineServices& services, std::size_t index,
                    const std::function<void(const TacticScript&, std::size_t)>& run);

struct CheckReport {
  enum class Status { Proved, Failed, Timeout };

  std::string theorem;
  Status status = Status::Failed;
  /// Preorder index of the failing tactic; equals the node count when the
  /// script ran out with goals left.
  std::optional<std::size_t> failed_index;
  std::optional<Diagnostic> diagnostic;
  std::vector<TraceEntry> trace;
  std::size_t solver_calls = 0;
  std::size_t cache_hits = 0;
  std::size_t cache_misses = 0;
  double seconds = 0;

  bool proved() const { return status == Status::Proved; }
};

std::string_view status_name(CheckReport::Status s);

/// Runs a whole script from the initial state.
CheckReport run_script(const Rule& theorem, const TacticScript& script, const EngineServices& services);

}  // namespace geocheck
