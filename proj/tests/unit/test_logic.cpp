#include "doctest.h"

#include "geocheck/core/logic.hpp"
#include "support/gen.hpp"

using namespace geocheck;

namespace {

TermPtr P(const char* n) { return Term::var(n, Sort::Point); }
TermPtr L(const char* n) { return Term::var(n, Sort::Line); }
TermPtr R(const char* n) { return Term::var(n, Sort::Real); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("term builders fold literals") {
  CHECK(equal(term::div(term::num(1), term::num(2)), Term::num(Rational(1, 2))));
  CHECK(equal(term::neg(term::num(3)), Term::num(Rational(-3))));
  CHECK(term::length(P("A"), P("B"))->sort() == Sort::Real);
  CHECK(term::angle(P("A"), P("B"), P("C"))->args().size() == 3);
  CHECK(rational_to_string(Rational(-1, 2)) == "-1/2");
  CHECK(rational_to_string(Rational(4)) == "4");
}

TEST_CASE("n-ary connectives") {
  auto a = Formula::pred("onLine", {P("A"), L("L")});
  CHECK(Formula::mk_and({})->is(Formula::Kind::True));
  CHECK(Formula::mk_or({})->is(Formula::Kind::False));
  CHECK(equal(Formula::mk_and({a}), a));
  CHECK(Formula::mk_and({a, a, a})->subs().size() == 3);
}

TEST_CASE("object equality picks the predicate by sort") {
  CHECK(mk_eq_object(P("A"), P("B"))->name() == "eqPoint");
  CHECK(mk_eq_object(L("L"), L("M"))->name() == "eqLine");
  CHECK(code_of([] { mk_eq_object(P("A"), L("L")); }) == ErrorCode::SortMismatch);
  CHECK(is_equality_predicate("eqCircle"));
  CHECK_FALSE(is_equality_predicate("onLine"));
}

TEST_CASE("substitution checks sorts") {
  Substitution s;
  CHECK(code_of([&] { s.bind("A", Sort::Point, L("L")); }) == ErrorCode::SortMismatch);
  s.bind("A", Sort::Point, P("B"));
  CHECK(s.size() == 1);
  CHECK(equal(*s.find("A"), P("B")));
}

TEST_CASE("substitution avoids capture") {
  // ∃ B, between A B C  with A := B
  auto f = Formula::exists({{"B", Sort::Point}}, Formula::pred("between", {P("A"), P("B"), P("C")}));
  Substitution s;
  s.bind("A", Sort::Point, P("B"));
  auto g = substitute(f, s);
  REQUIRE(g->is(Formula::Kind::Exists));
  auto bound = g->binders()[0].name;
  CHECK(bound != "B");
  const auto& args = g->body()->args();
  CHECK(args[0]->name() == "B");
  CHECK(args[1]->name() == bound);
  CHECK(free_var_names(g) == std::set<std::string>{"B", "C"});
}

TEST_CASE("bound variables are not substituted") {
  auto f = Formula::forall({{"A", Sort::Point}}, Formula::pred("onLine", {P("A"), L("L")}));
  Substitution s;
  s.bind("A", Sort::Point, P("Z"));
  CHECK(equal(substitute(f, s), f));
}

TEST_CASE("fresh names") {
  CHECK(fresh_name("A", {}) == "A");
  CHECK(fresh_name("A", {"A"}) == "A′");
  CHECK(fresh_name("A", {"A", "A′"}) == "A′′");
}

TEST_CASE("rule instantiation") {
  Rule r;
  r.name = "r";
  r.params = {{"A", Sort::Point}, {"L", Sort::Line}};
  r.premise = Formula::pred("onLine", {P("A"), L("L")});
  r.conclusion = Formula::mk_not(Formula::pred("onLine", {P("A"), L("L")}));
  auto inst = instantiate_rule(r, {P("X"), L("M")});
  CHECK(equal(inst.premise, Formula::pred("onLine", {P("X"), L("M")})));
  CHECK(code_of([&] { instantiate_rule(r, {P("X")}); }) == ErrorCode::ArityMismatch);
  CHECK(code_of([&] { instantiate_rule(r, {P("X"), P("Y")}); }) == ErrorCode::SortMismatch);
  CHECK(r.statement()->is(Formula::Kind::Forall));
}

TEST_CASE("conjuncts and disjuncts flatten") {
  auto a = Formula::pred("onLine", {P("A"), L("L")});
  auto b = Formula::pred("onLine", {P("B"), L("L")});
  auto c = Formula::cmp(CmpOp::Lt, R("x"), term::num(1));
  auto f = Formula::mk_and({a, Formula::mk_and({b, Formula::top()}), c});
  CHECK(conjuncts(f).size() == 3);
  CHECK(disjuncts(Formula::mk_or({a, Formula::mk_or({b, c})})).size() == 3);
  CHECK(conjuncts(Formula::top()).empty());
}

TEST_CASE("normalize removes double negation and sorts conjunctions") {
  auto a = Formula::pred("onLine", {P("A"), L("L")});
  auto b = Formula::pred("onLine", {P("B"), L("L")});
  CHECK(equal(normalize(Formula::mk_not(Formula::mk_not(a))), normalize(a)));
  CHECK(equal(normalize(Formula::mk_and({a, b})), normalize(Formula::mk_and({b, a}))));
  CHECK(equal(normalize(Formula::mk_and({a, Formula::mk_and({b, a})})),
              normalize(Formula::mk_and({Formula::mk_and({a, b}), a}))));
}

TEST_CASE("compare is a total order consistent with equal") {
  gen::Gen g(11);
  std::vector<FormulaPtr> fs;
  for (int i = 0; i < 60; ++i) fs.push_back(g.formula(g.scope(), 2));
  for (const auto& x : fs) {
    CHECK(compare(*x, *x) == 0);
    for (const auto& y : fs) {
      int c = compare(*x, *y);
      CHECK(c == -compare(*y, *x));
      CHECK((c == 0) == equal(x, y));
      for (const auto& z : fs)
        if (c < 0 && compare(*y, *z) < 0) CHECK(compare(*x, *z) < 0);
    }
  }
}

TEST_CASE("property: normalize is idempotent") {
  gen::Gen g(1);
  for (int i = 0; i < 500; ++i) {
    auto f = g.formula(g.scope(), 3);
    auto n = normalize(f);
    CHECK(equal(normalize(n), n));
  }
}

TEST_CASE("property: normalize ignores conjunct order") {
  gen::Gen g(2);
  for (int i = 0; i < 300; ++i) {
    auto s = g.scope();
    std::vector<FormulaPtr> xs;
    for (std::size_t k = 2 + g.below(3); k > 0; --k) xs.push_back(g.formula(s, 2));
    auto ys = xs;
    std::reverse(ys.begin(), ys.end());
    CHECK(equal(normalize(Formula::mk_and(xs)), normalize(Formula::mk_and(ys))));
  }
}

TEST_CASE("property: normalize is invariant under bound renaming") {
  gen::Gen g(3);
  for (int i = 0; i < 300; ++i) {
    auto s = g.scope();
    auto body = g.formula(s, 2);
    // Close over every free variable, once with the original names and once
    // with primed names.
    std::vector<Binder> bs, renamed;
    Substitution sub;
    for (const auto& [n, sort] : free_vars(body)) {
      bs.push_back({n, sort});
      renamed.push_back({n + "_r", sort});
      sub.bind(n, sort, Term::var(n + "_r", sort));
    }
    if (bs.empty()) continue;
    auto f1 = Formula::forall(bs, body);
    auto f2 = Formula::forall(renamed, substitute(body, sub));
    CHECK(equal(normalize(f1), normalize(f2)));
    CHECK(free_vars(f2).empty());
  }
}

TEST_CASE("property: substituting a variable for itself is the identity") {
  gen::Gen g(4);
  for (int i = 0; i < 300; ++i) {
    auto s = g.scope();
    auto f = g.formula(s, 3);
    Substitution sub;
    for (const auto& [n, sort] : free_vars(f)) sub.bind(n, sort, Term::var(n, sort));
    CHECK(equal(substitute(f, sub), f));
  }
}
