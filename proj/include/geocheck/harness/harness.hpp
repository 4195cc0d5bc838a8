#pragma once

// Command implementations behind the geocheck tool: checking files, building
// a library in order, benchmark evaluation and statement sanity checks.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "geocheck/engine/engine.hpp"
#include "geocheck/numeric/model.hpp"
#include "geocheck/smt/smt.hpp"
#include "geocheck/theory/theory.hpp"

namespace geocheck {

/// Overall outcome of a command. Process exit codes derive from it alone.
enum class RunStatus { Proved, Failed, Timeout, ParseError, SolverMissing, InputError };

std::string_view run_status_name(RunStatus s);
/// 0 proved, 1 input error, 2 parse error, 3 failed, 4 timeout, 5 no solver.
int exit_code(RunStatus s);

struct HarnessConfig {
  /// `solver.timeout_secs` is the per-obligation limit.
  SolverConfig solver;
  /// Limit for speculative calls made during argument inference.
  double probe_timeout_secs = 5;
  std::size_t jobs = 1;
  std::optional<std::filesystem::path> dump_dir;
  std::uint64_t seed = 0;
  std::size_t trials = 10000;
  /// Holds `theory/` and `library/`.
  std::filesystem::path data_dir = default_data_dir();
  std::size_t inference_bound = 5000;
};

struct TheoremOutcome {
  CheckReport report;
  std::string file;
  std::size_t line = 0;
  /// Formatted diagnostic, empty when proved.
  std::string message;
};

struct RunReport {
  std::string command;
  std::string target;
  RunStatus status = RunStatus::Proved;
  std::vector<TheoremOutcome> theorems;
  /// Load and parse errors, formatted as `file:line:col: error[Code]: ...`.
  std::vector<std::string> errors;
  std::size_t solver_calls = 0;
  std::size_t cache_hits = 0;
  std::size_t cache_misses = 0;
  double seconds = 0;

  std::size_t proved() const;
};

/// Reads a whole file. Throws Error(Io).
std::string read_text(const std::filesystem::path& path);

/// The axiomatic base: `definitions.geo` and `axioms.geo` of `data_dir/theory`.
Theory load_base_theory(const HarnessConfig& cfg);

/// A theory together with one solver session over it. Theorems are checked
/// against rules visible at their library position.
class Checker {
 public:
  Checker(Theory theory, const HarnessConfig& cfg);

  Theory& theory() { return *theory_; }
  const Theory& theory() const { return *theory_; }
  SmtSession& session() { return *session_; }
  const HarnessConfig& config() const { return cfg_; }

  EngineServices services(std::size_t position, const std::string& label);

  /// Runs the proof of theorem `index`. Throws SolverNotFound.
  TheoremOutcome check(std::size_t index);
  /// Checks `indices` in order (concurrently with `jobs` > 1). A static pass
  /// first resolves every cited rule; with `fail_fast` the first
  /// ForwardReference stops the run before any solver call.
  RunReport check_all(const std::vector<std::size_t>& indices, bool fail_fast);

  /// Remembers source text for diagnostics.
  void add_text(const std::string& file, std::string text) { texts_[file] = std::move(text); }

 private:
  std::string format(const Diagnostic& d, const std::string& file) const;

  HarnessConfig cfg_;
  std::unique_ptr<Theory> theory_;
  std::unique_ptr<SmtSession> session_;
  std::map<std::string, std::string> texts_;
};

/// Checks every theorem of one file against the base theory plus the shipped
/// library. Library theorems with the same name as one in the file are left
/// out so that library results can be restated and re-proved.
RunReport cmd_check(const std::filesystem::path& file, const HarnessConfig& cfg);

/// Loads the `.geo` files of `dir` in file-name order on top of the base
/// theory and checks every theorem in that order.
RunReport cmd_build_lib(const std::filesystem::path& dir, const HarnessConfig& cfg);

// ---------------------------------------------------------------- benchmark

enum class Section { UG, LB, SP, HSC, OP, IMO };

std::string_view section_name(Section s);
std::optional<Section> section_from_name(std::string_view name);
const std::vector<Section>& all_sections();

struct BenchProblem {
  std::string id;
  Section section = Section::UG;
  std::filesystem::path statement_file;
  Rule reference;
  bool reference_proof = false;
};

struct BenchManifest {
  std::vector<BenchProblem> problems;

  std::size_t size() const { return problems.size(); }
  std::map<Section, std::size_t> section_counts() const;
  const BenchProblem* find(std::string_view id) const;
};

/// Parses a manifest. Statement paths are relative to `base`. Throws
/// InvalidManifest (bad schema, duplicate id, unknown section, unreadable or
/// malformed statement file).
BenchManifest parse_manifest(const std::string& json_text, const std::filesystem::path& base,
                             const SymbolTable& symbols);
BenchManifest load_manifest(const std::filesystem::path& path, const SymbolTable& symbols);

/// Fine-grained consistency: the restated theorem must equal the reference up
/// to binder names and the order of conjuncts and disjuncts.
bool statement_consistent(const Rule& submitted, const Rule& reference);

struct AttemptRecord {
  std::string problem_id;
  std::size_t sample_index = 0;
  std::string file;
  /// False for samples that have no attempt file; they count as failures.
  bool present = false;
  bool consistent = false;
  bool verified = false;
  std::string diagnostic;
  std::size_t solver_calls = 0;
  double seconds = 0;
};

/// Step one parses the submission and compares statements; only consistent
/// submissions reach step two, the proof check. An attempt file holds
/// optional helper theorems followed by the restated problem theorem, which
/// must be last. Attempts may not declare definitions or axioms.
AttemptRecord evaluate_attempt(Checker& checker, const BenchProblem& problem, const std::string& text,
                               std::size_t sample_index, const std::string& file = {});

struct PassAtK {
  std::size_t k = 0;
  std::size_t solved = 0;
  std::size_t total = 0;
  /// Percentage rounded to two decimals.
  double rate = 0;
  std::map<Section, std::size_t> solved_by_section;
};

/// Percentage `100 * num / den` rounded half away from zero to two decimals.
double percent2(std::size_t num, std::size_t den);

/// A problem is solved at k when one of its k lowest-indexed samples is
/// verified. Throws InsufficientSamples naming every problem with fewer than
/// k samples.
PassAtK pass_at_k(const BenchManifest& manifest, const std::vector<AttemptRecord>& records, std::size_t k);

struct EvalReport {
  std::vector<BenchProblem> problems;
  std::vector<AttemptRecord> records;
  std::vector<PassAtK> pass;
  std::size_t samples = 0;
  std::size_t solver_calls = 0;
  double seconds = 0;
  RunStatus status = RunStatus::Proved;
  std::vector<std::string> errors;
};

/// Attempts are `<id>.<index>.geo` files in `attempts_dir`. The sample budget
/// is the largest number of attempts of any problem; problems with fewer get
/// missing records.
EvalReport cmd_bench(const std::filesystem::path& manifest, const std::filesystem::path& attempts_dir,
                     const std::vector<std::size_t>& ks, const HarnessConfig& cfg);

// ------------------------------------------------------------------- sanity

struct SanityReport {
  enum class Verdict { Ok, Counterexample, Vacuous };

  std::string statement;
  Verdict verdict = Verdict::Ok;
  std::optional<Assignment> witness;
  std::size_t trials = 0;
  std::size_t satisfied = 0;
  std::size_t degenerate = 0;
  std::uint64_t seed = 0;
  /// Solver answer on the hypotheses alone: unsat, sat, unknown, timeout,
  /// error, or "skipped" when no solver is available.
  std::string hypotheses;
};

std::string_view verdict_name(SanityReport::Verdict v);

/// Numeric counterexample search plus a solver check that the hypotheses are
/// satisfiable together with the axioms. The statement is the first theorem
/// of `text`.
SanityReport sanity_check(const std::string& text, const HarnessConfig& cfg, bool use_solver = true);
SanityReport cmd_sanity(const std::filesystem::path& file, const HarnessConfig& cfg);

}  // namespace geocheck
