#include "geocheck/theory/theory.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "geocheck/dsl/parser.hpp"
#include "geocheck/theory/signature.hpp"

namespace geocheck {

namespace {

void collect_predicates(const FormulaPtr& f, std::vector<std::string>& out) {
  switch (f->kind()) {
    case Formula::Kind::Pred:
      if (std::find(out.begin(), out.end(), f->name()) == out.end()) out.push_back(f->name());
      return;
    case Formula::Kind::Cmp:
    case Formula::Kind::True:
    case Formula::Kind::False: return;
    default:
      for (const auto& g : f->subs()) collect_predicates(g, out);
  }
}

std::string read_file(const std::filesystem::path& path, ErrorCode missing) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(missing, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void DefinitionRegistry::register_definition(DefinitionEntry entry) {
  if (entries_.count(entry.name)) throw Error(ErrorCode::DuplicateName, "definition '" + entry.name + "' already exists");
  if (builtin_signature().lookup(entry.name))
    throw Error(ErrorCode::DuplicateName, "'" + entry.name + "' is a primitive symbol");
  std::vector<std::string> used;
  collect_predicates(entry.body, used);
  for (const auto& p : used) {
    if (p == entry.name) throw Error(ErrorCode::CyclicDefinition, "definition '" + entry.name + "' refers to itself");
    if (!builtin_signature().is_predicate(p) && !entries_.count(p))
      throw Error(ErrorCode::UnknownSymbol,
                  "definition '" + entry.name + "' uses '" + p + "', which is not defined before it");
  }
  VarSet allowed;
  for (const auto& b : entry.params) allowed.insert({b.name, b.sort});
  for (const auto& v : free_vars(entry.body))
    if (!allowed.count(v))
      throw Error(ErrorCode::UnknownSymbol, "definition '" + entry.name + "' has free variable '" + v.first + "'");
  order_.push_back(entry.name);
  std::string key = entry.name;
  entries_.emplace(std::move(key), std::move(entry));
}

const DefinitionEntry* DefinitionRegistry::find(std::string_view name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

FormulaPtr DefinitionRegistry::expand(const FormulaPtr& f) const {
  using K = Formula::Kind;
  switch (f->kind()) {
    case K::True:
    case K::False:
    case K::Cmp: return f;
    case K::Pred: {
      if (builtin_signature().is_predicate(f->name())) return f;
      const DefinitionEntry* d = find(f->name());
      if (!d) throw Error(ErrorCode::UnknownSymbol, "unknown predicate '" + f->name() + "'");
      if (d->params.size() != f->args().size())
        throw Error(ErrorCode::ArityMismatch, "'" + f->name() + "' expects " + std::to_string(d->params.size()) +
                                                  " arguments");
      Substitution s;
      for (std::size_t i = 0; i < d->params.size(); ++i) s.bind(d->params[i].name, d->params[i].sort, f->args()[i]);
      // Bodies only use earlier definitions, so this recursion terminates.
      return expand(substitute(d->body, s));
    }
    case K::Forall:
    case K::Exists: {
      auto body = expand(f->body());
      if (body == f->body()) return f;
      return f->is(K::Forall) ? Formula::forall(f->binders(), body) : Formula::exists(f->binders(), body);
    }
    default: {
      std::vector<FormulaPtr> subs;
      bool changed = false;
      for (const auto& g : f->subs()) {
        subs.push_back(expand(g));
        changed |= subs.back() != g;
      }
      if (!changed) return f;
      switch (f->kind()) {
        case K::Not: return Formula::mk_not(subs[0]);
        case K::And: return Formula::mk_and(std::move(subs));
        case K::Or: return Formula::mk_or(std::move(subs));
        case K::Implies: return Formula::implies(subs[0], subs[1]);
        default: return Formula::iff(subs[0], subs[1]);
      }
    }
  }
}

std::vector<std::string> DefinitionRegistry::definitions_used(const FormulaPtr& f) const {
  std::vector<std::string> preds;
  collect_predicates(f, preds);
  std::vector<std::string> out;
  for (auto& p : preds)
    if (contains(p)) out.push_back(std::move(p));
  return out;
}

SymbolTable DefinitionRegistry::symbols() const {
  SymbolTable t = SymbolTable::builtin();
  for (const auto& n : order_) t.add_definition(entries_.at(n));
  return t;
}

std::vector<AxiomEntry> axiom_set(const std::filesystem::path& file, const SymbolTable& symbols) {
  std::string text = read_file(file, ErrorCode::AxiomFileMissing);
  std::vector<AxiomEntry> out;
  for (auto& d : parse_library(text, symbols)) {
    if (auto* a = std::get_if<AxiomEntry>(&d.value)) out.push_back(std::move(*a));
  }
  return out;
}

Theory Theory::load(const std::filesystem::path& theory_dir) {
  Theory t;
  auto defs = theory_dir / "definitions.geo";
  auto axioms = theory_dir / "axioms.geo";
  if (!std::filesystem::exists(defs)) throw Error(ErrorCode::AxiomFileMissing, "missing " + defs.string());
  if (!std::filesystem::exists(axioms)) throw Error(ErrorCode::AxiomFileMissing, "missing " + axioms.string());
  t.add_file(defs);
  t.add_file(axioms);
  return t;
}

void Theory::claim_name(const std::string& name) {
  if (defs_.contains(name) || axiom_index_.count(name) || theorem_index_.count(name))
    throw Error(ErrorCode::DuplicateName, "'" + name + "' is already declared");
}

void Theory::add_definition(DefinitionEntry d) {
  claim_name(d.name);
  defs_.register_definition(std::move(d));
}

void Theory::add_axiom(AxiomEntry a) {
  claim_name(a.name);
  axiom_index_[a.name] = axioms_.size();
  axioms_.push_back(std::move(a));
}

std::size_t Theory::add_theorem(LibraryTheorem t) {
  claim_name(t.rule.name);
  theorem_index_[t.rule.name] = theorems_.size();
  theorems_.push_back(std::move(t));
  return theorems_.size() - 1;
}

std::vector<std::size_t> Theory::add_source(std::string_view text, const std::string& file) {
  return add_decls(parse_library(text, symbols()), file);
}

std::vector<std::size_t> Theory::add_decls(std::vector<Decl> decls, const std::string& file) {
  std::vector<std::size_t> added;
  for (auto& d : decls) {
    std::size_t line = d.line;
    std::visit(
        [&](auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, DefinitionEntry>) {
            add_definition(std::move(v));
          } else if constexpr (std::is_same_v<T, AxiomEntry>) {
            add_axiom(std::move(v));
          } else {
            added.push_back(add_theorem(LibraryTheorem{std::move(v.rule), std::move(v.proof), file, line}));
          }
        },
        d.value);
  }
  return added;
}

std::vector<std::size_t> Theory::add_file(const std::filesystem::path& path) {
  return add_source(read_file(path, ErrorCode::Io), path.string());
}

void Theory::add_directory(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".geo") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) add_file(f);
}

const AxiomEntry* Theory::find_axiom(std::string_view name) const {
  auto it = axiom_index_.find(name);
  return it == axiom_index_.end() ? nullptr : &axioms_[it->second];
}

std::optional<std::size_t> Theory::theorem_index(std::string_view name) const {
  auto it = theorem_index_.find(name);
  if (it == theorem_index_.end()) return std::nullopt;
  return it->second;
}

Rule Theory::lookup_rule(std::string_view name, std::size_t position) const {
  if (const auto* a = find_axiom(name)) return a->rule;
  if (auto idx = theorem_index(name)) {
    if (*idx >= position) {
      std::string from = position < theorems_.size() ? theorems_[position].rule.name : "the current file";
      throw Error(ErrorCode::ForwardReference,
                  "'" + std::string(name) + "' is declared after '" + from + "' and cannot be cited there");
    }
    return theorems_[*idx].rule;
  }
  if (const auto* d = defs_.find(name)) {
    Rule r;
    r.name = d->name;
    r.kind = RuleKind::Definition;
    r.params = d->params;
    std::vector<TermPtr> args;
    for (const auto& p : d->params) args.push_back(Term::var(p.name, p.sort));
    r.premise = Formula::top();
    r.conclusion = Formula::iff(Formula::pred(d->name, std::move(args)), d->body);
    return r;
  }
  throw Error(ErrorCode::UnknownRule, "unknown rule '" + std::string(name) + "'");
}

const std::filesystem::path& default_data_dir() {
  static const std::filesystem::path dir = [] {
    if (const char* env = std::getenv("GEOCHECK_DATA_DIR")) return std::filesystem::path(env);
#ifdef GEOCHECK_DATA_DIR
    return std::filesystem::path(GEOCHECK_DATA_DIR);
#else
    return std::filesystem::path("data");
#endif
  }();
  return dir;
}

}  // namespace geocheck
