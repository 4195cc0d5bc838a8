#pragma once

#include <string>

#include "geocheck/dsl/syntax.hpp"

namespace geocheck {

std::string render(const TermPtr& t);
std::string render(const FormulaPtr& f);
/// `theorem NAME : ∀ (...), premise → conclusion`.
std::string render(const Rule& r);
/// One tactic per line, nested blocks indented by two spaces from `indent`.
std::string render(const TacticScript& s, int indent = 2);
/// Library-file form of a declaration.
std::string render(const DefinitionEntry& d);
std::string render(const AxiomEntry& a);
std::string render(const TheoremEntry& t);

}  // namespace geocheck
