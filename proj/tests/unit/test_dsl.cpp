#include "doctest.h"

#include <fstream>
#include <sstream>

#include "geocheck/dsl/parser.hpp"
#include "geocheck/dsl/printer.hpp"
#include "geocheck/theory/theory.hpp"
#include "support/gen.hpp"

using namespace geocheck;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(GEOCHECK_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SymbolTable theory_symbols() {
  static Theory th = Theory::load(default_data_dir() / "theory");
  return th.symbols();
}

Scope scope_of(const std::vector<Binder>& bs) {
  Scope s;
  for (const auto& b : bs) s[b.name] = b.sort;
  return s;
}

Error error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an Error");
  return Error(ErrorCode::Io, "");
}

}  // namespace

TEST_CASE("terms") {
  Scope s{{"A", Sort::Point}, {"B", Sort::Point}, {"C", Sort::Point}};
  CHECK(equal(parse_term("|(A-B)|", s), term::length(Term::var("A", Sort::Point), Term::var("B", Sort::Point))));
  CHECK(parse_term("∠ A:B:C", s)->name() == "angle");
  CHECK(parse_term("(△ A:B:C).area", s)->name() == "area");
  CHECK(equal(parse_term("1/2"), Term::num(Rational(1, 2))));
  CHECK(equal(parse_term("-3"), Term::num(Rational(-3))));
  CHECK(render(parse_term("∟ + π / 2")) == "∟ + π / 2");
  CHECK(render(parse_term("Real.sin (π)")) == "Real.sin (π)");
}

TEST_CASE("formulas") {
  Scope s{{"A", Sort::Point}, {"B", Sort::Point}, {"L", Sort::Line}};
  auto f = parse_formula("A ≠ B ∧ A.onLine L", s);
  REQUIRE(f->is(Formula::Kind::And));
  CHECK(f->sub(0)->is(Formula::Kind::Not));
  CHECK(f->sub(0)->sub(0)->name() == "eqPoint");
  CHECK(render(f) == "A ≠ B ∧ A.onLine L");
  auto g = parse_formula("|(A-B)| > 1", s);
  REQUIRE(g->is(Formula::Kind::Cmp));
  CHECK(g->op() == CmpOp::Lt);
  CHECK(g->args()[0]->kind() == Term::Kind::Num);
}

TEST_CASE("statements need sort annotations") {
  auto e = error_of([] { parse_statement("theorem t : ∀ (A : Point), A.onLine M"); });
  CHECK(e.code() == ErrorCode::UnknownSymbol);
}

TEST_CASE("statement without implication has True premise") {
  auto r = parse_statement("theorem t : ∀ (A B : Point), A = A");
  CHECK(r.premise->is(Formula::Kind::True));
  CHECK(r.params.size() == 2);
}

TEST_CASE("the worked isosceles proof parses") {
  auto decls = parse_library(slurp("isosceles.geo"), theory_symbols());
  REQUIRE(decls.size() == 1);
  const auto& t = std::get<TheoremEntry>(decls[0].value);
  CHECK(t.rule.name == "isoTriangle_imp_eq_angles");
  REQUIRE(t.proof);
  CHECK(count_nodes(*t.proof) == 7);
  CHECK(t.proof->nodes[1].kind == TacticNode::Kind::Apply);
  CHECK(t.proof->nodes[1].witnesses == std::vector<std::string>{"D"});
  CHECK(t.proof->nodes[4].args.size() == 6);
}

TEST_CASE("the cyclic quadrilateral proof parses") {
  auto decls = parse_library(slurp("cyclic_supp.geo"), theory_symbols());
  REQUIRE(decls.size() == 1);
  const auto& t = std::get<TheoremEntry>(decls[0].value);
  REQUIRE(t.proof);
  const auto& cases = t.proof->nodes[2];
  CHECK(cases.kind == TacticNode::Kind::ByCases);
  REQUIRE(cases.branches.size() == 2);
  CHECK(cases.branches[1].nodes[0].kind == TacticNode::Kind::ByCases);
  CHECK(cases.branches[1].nodes[0].branches.size() == 2);
  CHECK(count_nodes(*t.proof) == 14);
  // Printing and reparsing gives the same tree.
  auto again = parse_library(render(t), theory_symbols());
  const auto& t2 = std::get<TheoremEntry>(again[0].value);
  CHECK(equal(t.rule, t2.rule));
  CHECK(equal(*t.proof, *t2.proof));
}

TEST_CASE("foreign tactics are rejected with a span") {
  for (std::string tac : {"rw [foo]", "nlinarith", "simp", "linarith [h]", "calc x = y := by rfl"}) {
    std::string text = "theorem t : ∀ (A B : Point), A ≠ B → B ≠ A := by\n  euclid_intros\n  " + tac + "\n";
    auto e = error_of([&] { parse_library(text); });
    CHECK(e.code() == ErrorCode::UnknownTactic);
    REQUIRE(e.span());
    auto [line, col] = line_col(text, e.span()->offset);
    CHECK(line == 3);
    CHECK(col == 3);
    auto d = to_diagnostic(e, text);
    CHECK(format_diagnostic(d, "t.geo", text).rfind("t.geo:3:3: error[UnknownTactic]", 0) == 0);
  }
  auto e = error_of([] { parse_proof("  frobnicate\n"); });
  CHECK(e.code() == ErrorCode::UnknownTactic);
  CHECK(std::string(e.what()).find("declarative") == std::string::npos);
}

TEST_CASE("syntax errors") {
  CHECK(error_of([] { parse_formula("A ∧"); }).code() == ErrorCode::SyntaxError);
  CHECK(error_of([] { parse_proof("  have h : True := by\n"); }).code() == ErrorCode::SyntaxError);
  CHECK(error_of([] { parse_proof("  cases h with x y\n"); }).code() == ErrorCode::UnsupportedSyntax);
}

TEST_CASE("witness sorts come from first use") {
  Scope s{{"A", Sort::Point}, {"B", Sort::Point}};
  auto script = parse_proof("  euclid_apply line_from_points A B as AB\n  euclid_assert A.onLine AB\n", s);
  CHECK(script.nodes[1].formula->args()[1]->sort() == Sort::Line);
}

TEST_CASE("property: rules survive printing") {
  gen::Gen g(20240601);
  for (int i = 0; i < 1000; ++i) {
    auto r = g.rule("t" + std::to_string(i));
    auto text = render(r);
    Rule back;
    try {
      back = parse_statement(text);
    } catch (const Error& e) {
      FAIL_CHECK(text << "\n  " << e.what());
      continue;
    }
    if (!equal(r, back)) FAIL_CHECK(text << "\n  reparsed as\n" << render(back));
  }
}

TEST_CASE("property: scripts survive printing") {
  gen::Gen g(77);
  for (int i = 0; i < 500; ++i) {
    auto scope = g.scope();
    auto s = g.script(scope, 2);
    auto text = render(s);
    TacticScript back;
    try {
      back = parse_proof(text, scope_of(scope));
    } catch (const Error& e) {
      FAIL_CHECK(text << "\n  " << e.what());
      continue;
    }
    if (!equal(s, back)) FAIL_CHECK(text << "\n  reparsed as\n" << render(back));
  }
}

TEST_CASE("property: printing is a fixed point") {
  gen::Gen g(5);
  for (int i = 0; i < 300; ++i) {
    auto scope = g.scope();
    auto f = g.formula(scope, 3);
    auto once = render(f);
    CHECK(render(parse_formula(once, scope_of(scope))) == once);
  }
}
