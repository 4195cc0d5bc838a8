#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace geocheck {

struct SolverVerdict {
  enum class Kind { Unsat, Sat, Unknown, Timeout, Error };

  Kind kind = Kind::Unknown;
  /// Model text for sat when requested, the solver message for errors.
  std::string detail;
  double seconds = 0;

  bool unsat() const { return kind == Kind::Unsat; }
};

std::string_view verdict_name(SolverVerdict::Kind kind);

struct SolverConfig {
  /// Executable path or bare name looked up on PATH. Empty means
  /// $GEOCHECK_SOLVER, then cvc5 or z3 from PATH.
  std::string path;
  /// Extra arguments; when empty, defaults are chosen from the executable name.
  std::vector<std::string> args;
  double timeout_secs = 60;
};

/// Absolute path of the configured solver. Throws SolverNotFound.
std::string resolve_solver(const SolverConfig& config);

/// Arguments used for a solver binary when none are configured.
std::vector<std::string> default_solver_args(const std::string& resolved_path);

/// Runs one query in a fresh solver process, killing it at the deadline.
/// Throws SolverNotFound or ProtocolError.
SolverVerdict run_solver(const std::string& query, const SolverConfig& config);

}  // namespace geocheck
