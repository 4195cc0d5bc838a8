#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "geocheck/dsl/syntax.hpp"

namespace geocheck {

using Scope = std::map<std::string, Sort, std::less<>>;

/// One `theorem NAME : STATEMENT` header (a trailing `:= by ...` is ignored).
Rule parse_statement(std::string_view text, const SymbolTable& symbols = SymbolTable::builtin());

/// A tactic block. `scope` holds the variables known before the first tactic;
/// names introduced later (witnesses) get their sort from the position of
/// their first use.
TacticScript parse_proof(std::string_view text, const Scope& scope = {},
                         const SymbolTable& symbols = SymbolTable::builtin());

/// Declarations in file order. Definitions earlier in the file are visible to
/// later declarations.
std::vector<Decl> parse_library(std::string_view text, const SymbolTable& symbols = SymbolTable::builtin());

FormulaPtr parse_formula(std::string_view text, const Scope& scope = {},
                         const SymbolTable& symbols = SymbolTable::builtin());
TermPtr parse_term(std::string_view text, const Scope& scope = {}, const SymbolTable& symbols = SymbolTable::builtin());

/// Splits a closed statement `∀ params, premise → conclusion` into a rule.
Rule rule_from_statement(std::string name, RuleKind kind, const FormulaPtr& statement);

/// Re-sorts free variables of `f` according to `scope`, re-choosing object
/// equality predicates to match. Used for script formulas whose sorts were
/// inferred before the context was known.
FormulaPtr resort(const FormulaPtr& f, const Scope& scope);
TermPtr resort(const TermPtr& t, const Scope& scope);

}  // namespace geocheck
