#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace geocheck {

/// Byte range inside a source text.
struct Span {
  std::size_t offset = 0;
  std::size_t length = 0;

  bool operator==(const Span&) const = default;
};

enum class ErrorCode {
  // core-logic
  SortMismatch,
  ArityMismatch,
  // geo-theory
  UnknownSymbol,
  DuplicateName,
  CyclicDefinition,
  UnknownRule,
  ForwardReference,
  AxiomFileMissing,
  // dsl
  SyntaxError,
  SortAnnotationMissing,
  UnknownTactic,
  UnsupportedSyntax,
  // engine
  NotAUniversal,
  PremiseNotEstablished,
  WitnessCountMismatch,
  GoalNotClosed,
  NotAnExistential,
  NotAConjunction,
  NotADisjunction,
  NameClash,
  InferenceBoundExceeded,
  ProofIncomplete,
  NoActiveGoal,
  // smt
  UnexpandedDefinition,
  UnknownConstant,
  CycleDetected,
  SolverNotFound,
  ProtocolError,
  // numeric-model
  UnassignedName,
  DegenerateAngle,
  // cli-harness
  InvalidManifest,
  InsufficientSamples,
  Io,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::optional<Span> span = std::nullopt)
      : std::runtime_error(message), code_(code), span_(span) {}

  ErrorCode code() const noexcept { return code_; }
  const std::optional<Span>& span() const noexcept { return span_; }

 private:
  ErrorCode code_;
  std::optional<Span> span_;
};

}  // namespace geocheck
