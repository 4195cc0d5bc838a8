#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "geocheck/dsl/parser.hpp"
#include "geocheck/theory/signature.hpp"
#include "geocheck/theory/theory.hpp"

using namespace geocheck;

namespace {

Theory base() { return Theory::load(default_data_dir() / "theory"); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::Io;
}

DefinitionEntry def(const std::string& name, const std::string& body, std::vector<Binder> params,
                    const SymbolTable& syms = SymbolTable::builtin()) {
  Scope s;
  for (const auto& p : params) s[p.name] = p.sort;
  return {name, params, parse_formula(body, s, syms)};
}

}  // namespace

TEST_CASE("builtin signature") {
  const auto& sig = builtin_signature();
  CHECK(sig.is_predicate("between"));
  CHECK(sig.is_function("angle"));
  CHECK_FALSE(sig.is_function("onLine"));
  CHECK(sig.lookup("angle")->args == std::vector<Sort>{Sort::Point, Sort::Point, Sort::Point});
  CHECK(sig.lookup("length")->result == Sort::Real);
  CHECK(object_sorts().size() == 3);
}

TEST_CASE("shipped theory loads") {
  auto th = base();
  CHECK(th.definitions().size() >= 20);
  CHECK(th.definitions().contains("Coll"));
  CHECK(th.definitions().contains("RadicalAxis"));
  CHECK(th.axioms().size() >= 70);
  const auto* a = th.find_axiom("congruentTriangles_SAS");
  REQUIRE(a);
  CHECK(a->group == AxiomGroup::Superposition);
  CHECK(th.find_axiom("line_from_points")->rule.kind == RuleKind::Construction);
  CHECK(th.find_axiom("line_from_points")->group == AxiomGroup::Construction);
  CHECK_FALSE(th.find_axiom("line_from_points")->euclid_tagged);
  CHECK(th.find_axiom("between_symm")->euclid_tagged);
  CHECK(th.find_axiom("similar_AA")->group == AxiomGroup::Extension);
}

TEST_CASE("definition registry") {
  DefinitionRegistry reg;
  Binder A{"A", Sort::Point}, B{"B", Sort::Point}, C{"C", Sort::Point};
  reg.register_definition(def("Coll", "between A B C ∨ between B C A ∨ between C A B", {A, B, C}));
  auto syms = reg.symbols();
  reg.register_definition(def("Tri", "¬ Coll A B C", {A, B, C}, syms));
  CHECK(reg.order() == std::vector<std::string>{"Coll", "Tri"});
  CHECK(code_of([&] { reg.register_definition(def("Coll", "A = B", {A, B})); }) == ErrorCode::DuplicateName);
  CHECK(code_of([&] { reg.register_definition(def("between", "A = B", {A, B})); }) == ErrorCode::DuplicateName);
  CHECK(code_of([&] {
          reg.register_definition({"Loop", {A}, Formula::pred("Loop", {Term::var("A", Sort::Point)})});
        }) == ErrorCode::CyclicDefinition);
  CHECK(code_of([&] {
          reg.register_definition({"Bad", {A}, Formula::pred("Nope", {Term::var("A", Sort::Point)})});
        }) == ErrorCode::UnknownSymbol);

  Scope s{{"X", Sort::Point}, {"Y", Sort::Point}, {"Z", Sort::Point}};
  auto f = parse_formula("Tri X Y Z", s, reg.symbols());
  CHECK(reg.definitions_used(f) == std::vector<std::string>{"Tri"});
  auto e = reg.expand(f);
  CHECK(reg.definitions_used(e).empty());
  auto want = parse_formula("¬ (between X Y Z ∨ between Y Z X ∨ between Z X Y)", s);
  CHECK(equal(e, want));
}

TEST_CASE("expansion avoids capture") {
  DefinitionRegistry reg;
  Binder A{"A", Sort::Point};
  // the bound M must not capture a caller's M
  reg.register_definition(def("OnSome", "∃ (M : Line), A.onLine M", {A}));
  Scope s{{"M", Sort::Point}};
  auto e = reg.expand(parse_formula("OnSome M", s, reg.symbols()));
  REQUIRE(e->is(Formula::Kind::Exists));
  CHECK(e->binders()[0].name != "M");
  CHECK(e->body()->args()[0]->name() == "M");
}

TEST_CASE("rule lookup respects file order") {
  auto th = base();
  th.add_source(
      "theorem first : ∀ (A B : Point), A = B → B = A\n\n"
      "theorem second : ∀ (A B : Point), A ≠ B → B ≠ A\n",
      "t.geo");
  CHECK(th.lookup_rule("first", 1).name == "first");
  CHECK(code_of([&] { th.lookup_rule("second", 1); }) == ErrorCode::ForwardReference);
  CHECK(code_of([&] { th.lookup_rule("first", 0); }) == ErrorCode::ForwardReference);
  CHECK(th.lookup_rule("between_symm", 0).kind == RuleKind::Inference);
  CHECK(code_of([&] { th.lookup_rule("missing"); }) == ErrorCode::UnknownRule);
  auto d = th.lookup_rule("Triangle", 0);
  CHECK(d.kind == RuleKind::Definition);
  CHECK(d.conclusion->is(Formula::Kind::Iff));
}

TEST_CASE("duplicate names across kinds") {
  auto th = base();
  CHECK(code_of([&] { th.add_source("theorem between_symm : ∀ (A : Point), A = A\n", "t.geo"); }) ==
        ErrorCode::DuplicateName);
  th.add_source("theorem once : ∀ (A : Point), A = A\n", "a.geo");
  CHECK(code_of([&] { th.add_source("theorem once : ∀ (A : Point), A = A\n", "b.geo"); }) ==
        ErrorCode::DuplicateName);
}

TEST_CASE("axiom groups") {
  for (auto g : {AxiomGroup::Construction, AxiomGroup::Diagrammatic, AxiomGroup::Metric, AxiomGroup::Superposition,
                 AxiomGroup::Extension})
    CHECK(axiom_group_from_name(axiom_group_name(g)) == g);
  CHECK_FALSE(axiom_group_from_name("nonsense"));
  auto decls = parse_library("@[euclid]\naxiom ax group metric-inference : ∀ (A B : Point), |(A-B)| = |(B-A)|\n");
  const auto& a = std::get<AxiomEntry>(decls[0].value);
  CHECK(a.group == AxiomGroup::Metric);
  CHECK(a.euclid_tagged);
  CHECK(code_of([] { parse_library("axiom ax group gossip : ∀ (A : Point), A = A\n"); }) == ErrorCode::SyntaxError);
}

TEST_CASE("missing theory files") {
  auto dir = std::filesystem::temp_directory_path() / "geocheck_empty_theory";
  std::filesystem::create_directories(dir);
  CHECK(code_of([&] { Theory::load(dir); }) == ErrorCode::AxiomFileMissing);
  CHECK(code_of([&] { axiom_set(dir / "nope.geo"); }) == ErrorCode::AxiomFileMissing);
}

TEST_CASE("shipped library loads in order") {
  auto th = base();
  th.add_directory(default_data_dir() / "library");
  CHECK(th.theorems().size() >= 15);
  auto iso = th.theorem_index("isoTriangle_imp_eq_angles");
  auto thales = th.theorem_index("ThalesTheorem");
  REQUIRE(iso);
  REQUIRE(thales);
  CHECK(*iso < *thales);
  for (const auto& t : th.theorems()) CHECK(t.proof.has_value());
}
