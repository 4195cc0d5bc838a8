#pragma once

// SMT-LIB 2 translation, the axiom command cache (dependency graph with
// ordered emission), and the entailment front end used by the engine.

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "geocheck/core/context.hpp"
#include "geocheck/smt/solver.hpp"
#include "geocheck/theory/theory.hpp"

namespace geocheck {

struct SmtCommand {
  enum class Kind { DeclareSort, DeclareFun, Assert, Option, Check };

  Kind kind;
  std::string text;

  bool operator==(const SmtCommand&) const = default;
};

/// Injective ASCII escaping: [A-Za-z0-9] kept, '_' doubled, every other byte
/// written as '_' plus two hex digits.
std::string smt_escape(std::string_view name);
/// Free variables of an obligation become constants `c_<escaped>`.
std::string smt_constant(std::string_view name);
/// Quantified variables become `x_<escaped>`.
std::string smt_bound(std::string_view name);
/// SMT name of a signature symbol (pi, sin, cos are renamed to avoid
/// clashing with solver built-ins).
std::string smt_symbol(std::string_view name);
std::string smt_sort(Sort s);
/// `2.0`, `(/ 1 2)`, `(- 3.0)`.
std::string smt_rational(const Rational& r);

std::string translate_term(const TermPtr& t, const std::set<std::string>& bound = {});
/// Direct image of an expanded formula. Throws UnexpandedDefinition when a
/// non-primitive predicate is reached.
std::string translate_formula(const FormulaPtr& f, const std::set<std::string>& bound = {});

/// Commands declaring a signature symbol or sort (`Point`, `Line`, `Circle`),
/// or asserting an expanded closed formula.
std::vector<SmtCommand> translate_symbol(std::string_view name);
std::vector<SmtCommand> translate_assertion(const FormulaPtr& closed_expanded);

/// Directed graph of constants; an edge u -> v means u uses v.
class DependencyGraph {
 public:
  bool contains(std::string_view v) const { return deps_.count(std::string(v)) > 0; }
  void add_vertex(const std::string& v, std::vector<std::string> deps);
  const std::vector<std::string>& deps(const std::string& v) const;
  std::size_t size() const { return deps_.size(); }
  /// Vertices in insertion order.
  const std::vector<std::string>& vertices() const { return order_; }

  /// Post-order DFS from `roots` in the given order, children in edge order,
  /// skipping vertices in `done`. Dependencies are visited before dependents.
  /// Throws CycleDetected.
  std::vector<std::string> ordered_dfs(const std::vector<std::string>& roots,
                                       const std::set<std::string>& done = {}) const;

 private:
  std::map<std::string, std::vector<std::string>> deps_;
  std::vector<std::string> order_;
};

/// What the cache needs to know about a constant: the constants it uses and
/// the commands that introduce it.
struct ConstantInfo {
  std::vector<std::string> deps;
  std::vector<SmtCommand> commands;
};

using ConstantSource = std::function<std::optional<ConstantInfo>(std::string_view)>;

/// Source over the signature, the definitions and the axioms of a theory.
/// Definitions contribute no commands (they are expanded before translation)
/// but keep their place in the graph.
ConstantSource theory_source(const Theory& theory);

/// Ordered, deduplicated command list. Concurrent readers are allowed;
/// extension is exclusive.
class QueryCache {
 public:
  explicit QueryCache(ConstantSource source) : source_(std::move(source)) {}

  /// Commands for `name` and its not yet cached dependencies, dependencies
  /// first. Empty when `name` is already cached. Throws UnknownConstant or
  /// CycleDetected; on error the cache is unchanged.
  std::vector<SmtCommand> add_commands_for_constant(std::string_view name);

  bool cached(std::string_view name) const;
  /// Every cached command in emission order.
  std::vector<SmtCommand> commands() const;
  std::vector<std::string> cached_constants() const;
  DependencyGraph graph() const;

  /// Calls that found the constant already cached.
  std::size_t hits() const { return hits_.load(); }
  /// Constants translated so far.
  std::size_t misses() const { return misses_.load(); }

 private:
  ConstantSource source_;
  mutable std::shared_mutex mutex_;
  DependencyGraph graph_;
  std::set<std::string> done_;
  std::vector<std::string> constants_;
  std::vector<SmtCommand> commands_;
  std::atomic<std::size_t> hits_{0};
  std::atomic<std::size_t> misses_{0};
};

/// One query: prelude, declarations, hypotheses, negated obligation.
std::string assemble_query(const std::vector<SmtCommand>& prelude, const GoalContext& context,
                           const FormulaPtr& obligation_expanded, bool get_model = false);

struct SmtConfig {
  SolverConfig solver;
  /// When set, only these axioms are sent with each query.
  std::optional<std::set<std::string>> axiom_allowlist;
  std::optional<std::filesystem::path> dump_dir;
  bool get_model = false;
};

/// Per-session front end: owns the cache, expands definitions, writes dumps,
/// runs the solver.
class SmtSession {
 public:
  SmtSession(const Theory& theory, SmtConfig config);

  const Theory& theory() const { return theory_; }
  const SmtConfig& config() const { return config_; }
  QueryCache& cache() { return cache_; }
  const QueryCache& cache() const { return cache_; }

  /// Constants sent with every query, in emission-root order.
  std::vector<std::string> prelude_roots() const;
  /// Makes sure the prelude is cached and returns its commands.
  std::vector<SmtCommand> prelude();

  std::string assemble(const GoalContext& context, const FormulaPtr& obligation);

  /// context |= goal, decided by the solver (unsat confirms).
  /// `label` names the dump file: `NNNN_<label>.smt2`.
  SolverVerdict entails(const GoalContext& context, const FormulaPtr& goal, const std::string& label = "query",
                        std::optional<double> timeout_secs = std::nullopt);

  std::size_t solver_calls() const { return calls_.load(); }

 private:
  const Theory& theory_;
  SmtConfig config_;
  QueryCache cache_;
  std::atomic<std::size_t> calls_{0};
  std::atomic<std::size_t> dumps_{0};
};

}  // namespace geocheck
