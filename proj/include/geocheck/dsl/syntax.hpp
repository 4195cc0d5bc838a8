#pragma once

// Parsed artifacts of the proof language: tactic scripts, library
// declarations, diagnostics, and the symbol table used during elaboration.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "geocheck/core/logic.hpp"
#include "geocheck/error.hpp"

namespace geocheck {

struct TacticNode;

struct TacticScript {
  std::vector<TacticNode> nodes;
};

struct TacticNode {
  enum class Kind { Intros, Apply, Finish, Assert, Have, ByCases, ByContra, Use, SplitGoal, CasesHyp };

  Kind kind = Kind::Finish;
  Span span;
  /// Rule name (Apply), hypothesis name (Have, ByCases, ByContra, CasesHyp).
  /// Empty when the source gave none.
  std::string name;
  std::vector<TermPtr> args;
  std::vector<std::string> witnesses;
  /// Assert/Have/ByCases proposition.
  FormulaPtr formula;
  /// Use witness.
  TermPtr term;
  /// Have: {body}. ByCases: {then, else}. SplitGoal/CasesHyp: one per goal.
  /// Empty for branching tactics written without bullets; the new goals then
  /// stay on the stack for the following tactics.
  std::vector<TacticScript> branches;
};

std::string_view tactic_kind_name(TacticNode::Kind kind);

/// Structural equality ignoring spans.
bool equal(const TacticScript& a, const TacticScript& b);
bool equal(const TacticNode& a, const TacticNode& b);

/// Number of nodes in preorder, the numbering used for tactic indices.
std::size_t count_nodes(const TacticScript& s);

enum class AxiomGroup { Construction, Diagrammatic, Metric, Superposition, Extension };

std::string_view axiom_group_name(AxiomGroup g);
std::optional<AxiomGroup> axiom_group_from_name(std::string_view name);

struct DefinitionEntry {
  std::string name;
  std::vector<Binder> params;
  FormulaPtr body;
};

struct AxiomEntry {
  std::string name;
  Rule rule;
  AxiomGroup group = AxiomGroup::Extension;
  bool euclid_tagged = false;
};

struct TheoremEntry {
  Rule rule;
  std::optional<TacticScript> proof;
};

struct Decl {
  std::variant<DefinitionEntry, AxiomEntry, TheoremEntry> value;
  Span span;
  std::size_t line = 0;

  const std::string& name() const;
};

struct Diagnostic {
  enum class Severity { Error, Warning };

  Severity severity = Severity::Error;
  ErrorCode code = ErrorCode::SyntaxError;
  std::string message;
  Span span;
  std::string hint;
};

/// 1-based line and column (in code points) of a byte offset.
std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t offset);

/// "path:line:col: error[Code]: message".
std::string format_diagnostic(const Diagnostic& d, std::string_view path, std::string_view text);

Diagnostic to_diagnostic(const Error& e, std::string_view text);

/// Predicate names visible to the elaborator: the signature's predicates plus
/// definitions, with their argument sorts.
struct SymbolTable {
  std::map<std::string, std::vector<Sort>, std::less<>> predicates;
  std::set<std::string, std::less<>> definitions;

  static SymbolTable builtin();
  void add_definition(const DefinitionEntry& d);
  const std::vector<Sort>* predicate(std::string_view name) const;
  bool is_definition(std::string_view name) const { return definitions.count(name) > 0; }
};

}  // namespace geocheck
