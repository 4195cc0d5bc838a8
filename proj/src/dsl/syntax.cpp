#include "geocheck/dsl/syntax.hpp"

#include "geocheck/theory/signature.hpp"

namespace geocheck {

std::string_view tactic_kind_name(TacticNode::Kind kind) {
  switch (kind) {
    case TacticNode::Kind::Intros: return "euclid_intros";
    case TacticNode::Kind::Apply: return "euclid_apply";
    case TacticNode::Kind::Finish: return "euclid_finish";
    case TacticNode::Kind::Assert: return "euclid_assert";
    case TacticNode::Kind::Have: return "have";
    case TacticNode::Kind::ByCases: return "by_cases";
    case TacticNode::Kind::ByContra: return "by_contra";
    case TacticNode::Kind::Use: return "use";
    case TacticNode::Kind::SplitGoal: return "constructor";
    case TacticNode::Kind::CasesHyp: return "cases";
  }
  return "?";
}

bool equal(const TacticNode& a, const TacticNode& b) {
  if (a.kind != b.kind || a.name != b.name || a.witnesses != b.witnesses) return false;
  if (a.args.size() != b.args.size() || a.branches.size() != b.branches.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!equal(a.args[i], b.args[i])) return false;
  if (!equal(a.formula, b.formula) || !equal(a.term, b.term)) return false;
  for (std::size_t i = 0; i < a.branches.size(); ++i)
    if (!equal(a.branches[i], b.branches[i])) return false;
  return true;
}

bool equal(const TacticScript& a, const TacticScript& b) {
  if (a.nodes.size() != b.nodes.size()) return false;
  for (std::size_t i = 0; i < a.nodes.size(); ++i)
    if (!equal(a.nodes[i], b.nodes[i])) return false;
  return true;
}

std::size_t count_nodes(const TacticScript& s) {
  std::size_t n = 0;
  for (const auto& node : s.nodes) {
    ++n;
    for (const auto& b : node.branches) n += count_nodes(b);
  }
  return n;
}

std::string_view axiom_group_name(AxiomGroup g) {
  switch (g) {
    case AxiomGroup::Construction: return "construction";
    case AxiomGroup::Diagrammatic: return "diagrammatic-inference";
    case AxiomGroup::Metric: return "metric-inference";
    case AxiomGroup::Superposition: return "superposition";
    case AxiomGroup::Extension: return "extension";
  }
  return "?";
}

std::optional<AxiomGroup> axiom_group_from_name(std::string_view name) {
  for (auto g : {AxiomGroup::Construction, AxiomGroup::Diagrammatic, AxiomGroup::Metric, AxiomGroup::Superposition,
                 AxiomGroup::Extension})
    if (axiom_group_name(g) == name) return g;
  return std::nullopt;
}

const std::string& Decl::name() const {
  return std::visit(
      [](const auto& v) -> const std::string& {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, TheoremEntry>)
          return v.rule.name;
        else
          return v.name;
      },
      value);
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
      ++col;
    }
  }
  return {line, col};
}

std::string format_diagnostic(const Diagnostic& d, std::string_view path, std::string_view text) {
  auto [line, col] = line_col(text, d.span.offset);
  std::string out = std::string(path) + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                    (d.severity == Diagnostic::Severity::Error ? "error" : "warning") + "[" +
                    std::string(error_code_name(d.code)) + "]: " + d.message;
  if (!d.hint.empty()) out += "\n  hint: " + d.hint;
  return out;
}

Diagnostic to_diagnostic(const Error& e, std::string_view text) {
  Diagnostic d;
  d.code = e.code();
  d.message = e.what();
  if (e.span()) {
    d.span = *e.span();
  } else {
    d.span = Span{0, text.empty() ? std::size_t{0} : std::size_t{1}};
  }
  if (d.span.offset > text.size()) d.span.offset = text.size();
  if (d.span.offset + d.span.length > text.size()) d.span.length = text.size() - d.span.offset;
  if (e.code() == ErrorCode::UnknownTactic)
    d.hint = "use euclid_intros, euclid_apply, euclid_finish, euclid_assert, have, by_cases, by_contra, use, "
             "constructor, split_ands or cases";
  return d;
}

SymbolTable SymbolTable::builtin() {
  SymbolTable t;
  for (const auto& s : builtin_signature().symbols())
    if (s.result == Sort::Prop) t.predicates.emplace(s.name, s.args);
  return t;
}

void SymbolTable::add_definition(const DefinitionEntry& d) {
  std::vector<Sort> sorts;
  for (const auto& p : d.params) sorts.push_back(p.sort);
  predicates[d.name] = sorts;
  definitions.insert(d.name);
}

const std::vector<Sort>* SymbolTable::predicate(std::string_view name) const {
  auto it = predicates.find(name);
  return it == predicates.end() ? nullptr : &it->second;
}

}  // namespace geocheck
