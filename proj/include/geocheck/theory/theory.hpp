#pragma once

// Definitions, axioms and the ordered theorem library.

#include <cstddef>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geocheck/dsl/syntax.hpp"

namespace geocheck {

/// Abbreviation-style definitions in registration order. A definition body may
/// only mention signature symbols and definitions registered before it.
class DefinitionRegistry {
 public:
  /// Throws DuplicateName, CyclicDefinition (the body mentions the definition
  /// itself) or UnknownSymbol (the body mentions an unregistered predicate).
  void register_definition(DefinitionEntry entry);

  const DefinitionEntry* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  /// Names in registration order, which is also a valid expansion order.
  const std::vector<std::string>& order() const { return order_; }
  std::size_t size() const { return order_.size(); }

  /// Unfolds every definition atom until none remain. Capture-avoiding.
  /// Throws UnknownSymbol for predicates that are neither primitive nor
  /// registered.
  FormulaPtr expand(const FormulaPtr& f) const;

  /// Definition names used directly by a formula (no unfolding).
  std::vector<std::string> definitions_used(const FormulaPtr& f) const;

  SymbolTable symbols() const;

 private:
  std::map<std::string, DefinitionEntry, std::less<>> entries_;
  std::vector<std::string> order_;
};

/// Reads and parses an axiom file. Throws AxiomFileMissing or a parse error.
std::vector<AxiomEntry> axiom_set(const std::filesystem::path& file,
                                  const SymbolTable& symbols = SymbolTable::builtin());

struct LibraryTheorem {
  Rule rule;
  std::optional<TacticScript> proof;
  std::string file;
  std::size_t line = 0;
};

/// Everything a proof may cite: definitions, axioms, and theorems in the
/// order they were loaded.
class Theory {
 public:
  static constexpr std::size_t kEnd = std::numeric_limits<std::size_t>::max();

  /// Loads `definitions.geo` and `axioms.geo` from a theory directory.
  static Theory load(const std::filesystem::path& theory_dir);

  /// Adds the declarations of one file in order. Returns the indices of the
  /// theorems it contributed.
  std::vector<std::size_t> add_source(std::string_view text, const std::string& file);
  /// Same for already parsed declarations.
  std::vector<std::size_t> add_decls(std::vector<Decl> decls, const std::string& file);
  std::vector<std::size_t> add_file(const std::filesystem::path& path);
  /// Adds every `.geo` file of a directory in lexicographic file-name order.
  void add_directory(const std::filesystem::path& dir);

  void add_definition(DefinitionEntry d);
  void add_axiom(AxiomEntry a);
  std::size_t add_theorem(LibraryTheorem t);

  const DefinitionRegistry& definitions() const { return defs_; }
  const std::vector<AxiomEntry>& axioms() const { return axioms_; }
  const std::vector<LibraryTheorem>& theorems() const { return theorems_; }
  const AxiomEntry* find_axiom(std::string_view name) const;
  /// Index of a theorem by name.
  std::optional<std::size_t> theorem_index(std::string_view name) const;

  /// The rule called `name` as seen from theorem `position`: axioms and
  /// definitions are always visible, theorems only when strictly earlier.
  /// Throws UnknownRule or ForwardReference.
  Rule lookup_rule(std::string_view name, std::size_t position = kEnd) const;

  SymbolTable symbols() const { return defs_.symbols(); }

 private:
  void claim_name(const std::string& name);

  DefinitionRegistry defs_;
  std::vector<AxiomEntry> axioms_;
  std::vector<LibraryTheorem> theorems_;
  std::map<std::string, std::size_t, std::less<>> axiom_index_;
  std::map<std::string, std::size_t, std::less<>> theorem_index_;
};

/// The theory shipped with the project: data/theory plus data/library.
const std::filesystem::path& default_data_dir();

}  // namespace geocheck
