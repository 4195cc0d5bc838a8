#include "doctest.h"

#include <random>
#include <set>

#include "geocheck/dsl/parser.hpp"
#include "geocheck/smt/smt.hpp"
#include "geocheck/theory/signature.hpp"
#include "support/topo.hpp"

using namespace geocheck;

namespace {

const Theory& base() {
  static Theory th = Theory::load(default_data_dir() / "theory");
  return th;
}

bool have_solver() { return std::string(GEOCHECK_TEST_SOLVER).size() > 0; }

SolverConfig solver(double timeout = 30) {
  SolverConfig c;
  c.path = GEOCHECK_TEST_SOLVER;
  c.timeout_secs = timeout;
  return c;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::Io;
}

std::vector<std::string> texts(const std::vector<SmtCommand>& cs) {
  std::vector<std::string> out;
  for (const auto& c : cs) out.push_back(c.text);
  return out;
}

}  // namespace

TEST_CASE("escaping") {
  CHECK(smt_escape("AB") == "AB");
  CHECK(smt_escape("a_b") == "a__b");
  CHECK(smt_escape("A′") == "A_e2_80_b2");
  CHECK(smt_constant("Ω") == "c__ce_a9");
  CHECK(smt_bound("x") == "x_x");
  CHECK(smt_symbol("pi") == "realPi");
  CHECK(smt_rational(Rational(1, 2)) == "(/ 1 2)");
  CHECK(smt_rational(Rational(-3)) == "(- 3.0)");
}

TEST_CASE("escaping is injective over shipped names") {
  Theory th = Theory::load(default_data_dir() / "theory");
  th.add_directory(default_data_dir() / "library");
  std::set<std::string> names;
  for (const auto& n : th.definitions().order()) names.insert(n);
  for (const auto& a : th.axioms()) {
    names.insert(a.name);
    for (const auto& p : a.rule.params) names.insert(p.name);
  }
  for (const auto& t : th.theorems()) {
    names.insert(t.rule.name);
    for (const auto& p : t.rule.params) names.insert(p.name);
  }
  for (const auto& s : builtin_signature().symbols()) names.insert(s.name);
  for (const char* extra : {"a_b", "a__b", "a_", "_a", "A′", "A′′", "Ω₁", "Ω₂"}) names.insert(extra);
  std::set<std::string> images;
  for (const auto& n : names) {
    auto e = smt_escape(n);
    for (char c : e) CHECK(std::isalnum(static_cast<unsigned char>(c)) + (c == '_') > 0);
    images.insert(e);
  }
  CHECK(images.size() == names.size());
}

TEST_CASE("symbol and axiom translation") {
  CHECK(texts(translate_symbol("angle")) == std::vector<std::string>{"(declare-fun angle (Point Point Point) Real)"});
  CHECK(texts(translate_symbol("Point")) == std::vector<std::string>{"(declare-sort Point 0)"});
  CHECK(translate_symbol("add").empty());
  CHECK(code_of([] { translate_symbol("nope"); }) == ErrorCode::UnknownConstant);

  const auto* z = base().find_axiom("zero_segment_if");
  REQUIRE(z);
  CHECK(texts(translate_assertion(z->rule.statement())) ==
        std::vector<std::string>{
            "(assert (forall ((x_a Point)(x_b Point)) (=> (= (length x_a x_b) 0.0) (= x_a x_b))))"});

  const auto* r = base().find_axiom("rightAngle_eq_pi_div_two");
  REQUIRE(r);
  auto t = translate_assertion(r->rule.statement())[0].text;
  CHECK(t == "(assert (=> true (= rightAngle (/ realPi 2.0))))");

  auto f = parse_formula("Triangle A B C", {{"A", Sort::Point}, {"B", Sort::Point}, {"C", Sort::Point}},
                         base().symbols());
  CHECK(code_of([&] { translate_formula(f); }) == ErrorCode::UnexpandedDefinition);
}

TEST_CASE("cache emits dependencies first and only once") {
  QueryCache cache(theory_source(base()));
  auto first = texts(cache.add_commands_for_constant("sin"));
  CHECK(first == std::vector<std::string>{"(declare-fun realSin (Real) Real)"});
  auto second = cache.add_commands_for_constant("rightTriangle_sin");
  REQUIRE(second.size() > 0);
  for (const auto& c : second) {
    CHECK(c.text != first[0]);
    CHECK(c.text.find("declare-fun realSin") == std::string::npos);
  }
  CHECK(second.back().kind == SmtCommand::Kind::Assert);
  CHECK(cache.add_commands_for_constant("rightTriangle_sin").empty());
  CHECK(cache.hits() == 1);
  CHECK(code_of([&] { cache.add_commands_for_constant("no_such_thing"); }) == ErrorCode::UnknownConstant);
}

TEST_CASE("similar_AA emission is a topological order of its graph") {
  QueryCache cache(theory_source(base()));
  auto cmds = cache.add_commands_for_constant("similar_AA");
  auto graph = cache.graph();
  auto order = cache.cached_constants();
  // Brute force over the constants of this graph.
  std::map<std::string, int> id;
  for (const auto& v : graph.vertices()) id.emplace(v, static_cast<int>(id.size()));
  topo::Dag g;
  g.deps.resize(id.size());
  for (const auto& [v, i] : id)
    for (const auto& u : graph.deps(v)) g.deps[i].push_back(id.at(u));
  std::vector<int> all, emitted;
  for (const auto& [v, i] : id) all.push_back(i);
  for (const auto& v : order) emitted.push_back(id.at(v));
  auto orders = topo::all_orders(g, all, 5'000'000);
  REQUIRE(orders.size() < 5'000'000);
  CHECK(std::find(orders.begin(), orders.end(), emitted) != orders.end());
  CHECK(order.back() == "similar_AA");
  CHECK(std::find(order.begin(), order.end(), "SimilarTriangles") != order.end());
}

TEST_CASE("cycles are rejected and leave the cache unchanged") {
  QueryCache cache([](std::string_view n) -> std::optional<ConstantInfo> {
    if (n == "a") return ConstantInfo{{"b"}, {{SmtCommand::Kind::Assert, "(assert a)"}}};
    if (n == "b") return ConstantInfo{{"a"}, {{SmtCommand::Kind::Assert, "(assert b)"}}};
    if (n == "c") return ConstantInfo{{}, {{SmtCommand::Kind::Assert, "(assert c)"}}};
    return std::nullopt;
  });
  CHECK(code_of([&] { cache.add_commands_for_constant("a"); }) == ErrorCode::CycleDetected);
  CHECK(cache.commands().empty());
  CHECK(cache.add_commands_for_constant("c").size() == 1);
}

TEST_CASE("property: cache emission is sound on random graphs") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 60; ++round) {
    std::size_t n = 3 + rng() % 8;  // at most 10 vertices keeps enumeration small
    auto g = topo::random_dag(n, 0.35, rng);
    QueryCache cache(topo::source(g));
    std::vector<int> emitted;
    std::vector<int> roots;
    for (int calls = 0; calls < 6; ++calls) {
      int v = static_cast<int>(rng() % n);
      roots.push_back(v);
      for (const auto& c : cache.add_commands_for_constant(topo::Dag::name(v))) emitted.push_back(topo::vertex_of(c));
    }
    auto reach = topo::closure(g, roots);
    auto sorted = emitted;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == reach);  // every needed constant exactly once
    auto orders = topo::all_orders(g, reach, 2'000'000);
    CHECK(std::find(orders.begin(), orders.end(), emitted) != orders.end());
    CHECK(cache.misses() == reach.size());
  }
}

TEST_CASE("queries are assembled in order and are stable") {
  SmtSession session(base(), SmtConfig{});
  GoalContext ctx;
  ctx.vars = {{"A", Sort::Point}, {"B", Sort::Point}, {"C", Sort::Point}};
  Scope s{{"A", Sort::Point}, {"B", Sort::Point}, {"C", Sort::Point}};
  ctx.hyps.push_back({"h0", parse_formula("IsoTriangle A B C", s, base().symbols()), true});
  auto goal = parse_formula("∠ A:B:C = ∠ A:C:B", s);
  auto q1 = session.assemble(ctx, goal);
  auto q2 = session.assemble(ctx, goal);
  CHECK(q1 == q2);
  CHECK(q1.rfind("(set-logic ALL)\n", 0) == 0);
  auto pos = [&](const std::string& x) { return q1.find(x); };
  CHECK(pos("(declare-sort Point 0)") < pos("(declare-const c_A Point)"));
  CHECK(pos("(declare-const c_C Point)") < pos("; h0"));
  CHECK(pos("; h0") < pos("; goal"));
  CHECK(q1.find("(assert (not (= (angle c_A c_B c_C) (angle c_A c_C c_B))))") != std::string::npos);
  CHECK(q1.find("IsoTriangle") == std::string::npos);
  CHECK(q1.substr(q1.size() - 12) == "(check-sat)\n");
  // Each prelude command once.
  std::set<std::string> seen;
  for (const auto& c : session.prelude()) CHECK(seen.insert(c.text).second);
}

TEST_CASE("prelude allowlist") {
  SmtConfig cfg;
  cfg.axiom_allowlist = std::set<std::string>{"between_symm"};
  SmtSession session(base(), cfg);
  auto roots = session.prelude_roots();
  CHECK(std::find(roots.begin(), roots.end(), "between_symm") != roots.end());
  CHECK(std::find(roots.begin(), roots.end(), "sameSide_symm") == roots.end());
}

TEST_CASE("missing solver") {
  SolverConfig c;
  c.path = "/nonexistent/solver";
  CHECK(code_of([&] { resolve_solver(c); }) == ErrorCode::SolverNotFound);
  CHECK(code_of([&] { run_solver("(check-sat)\n", c); }) == ErrorCode::SolverNotFound);
}

TEST_CASE("solver verdicts" * doctest::skip(!have_solver())) {
  CHECK(run_solver("(assert false)\n(check-sat)\n", solver()).kind == SolverVerdict::Kind::Unsat);
  CHECK(run_solver("(assert (not false))\n(check-sat)\n", solver()).kind == SolverVerdict::Kind::Sat);

  SmtConfig cfg;
  cfg.solver = solver();
  SmtSession session(base(), cfg);
  GoalContext empty;
  CHECK(session.entails(empty, Formula::top()).unsat());

  GoalContext two;
  two.vars = {{"a", Sort::Point}, {"b", Sort::Point}};
  auto v = session.entails(two, mk_eq_object(Term::var("a", Sort::Point), Term::var("b", Sort::Point)));
  CHECK_FALSE(v.unsat());

  Scope s{{"A", Sort::Point}, {"B", Sort::Point}, {"C", Sort::Point}};
  GoalContext iso;
  iso.vars = {{"A", Sort::Point}, {"B", Sort::Point}, {"C", Sort::Point}};
  iso.hyps.push_back({"h0", parse_formula("|(A-B)| = |(A-C)|", s), true});
  CHECK(session.entails(iso, parse_formula("|(A-C)| = |(B-A)|", s)).unsat());
  CHECK(session.solver_calls() == 3);
}

TEST_CASE("solver timeout" * doctest::skip(!have_solver())) {
  // Nonlinear integer equation with no small solutions.
  std::string q =
      "(set-logic ALL)\n(declare-const x Int)\n(declare-const y Int)\n(declare-const z Int)\n"
      "(assert (> x 1000))\n(assert (> y 1000))\n(assert (> z 1000))\n"
      "(assert (= (+ (* x x x) (* y y y)) (* z z z)))\n(check-sat)\n";
  auto v = run_solver(q, solver(1.0));
  CHECK((v.kind == SolverVerdict::Kind::Timeout || v.kind == SolverVerdict::Kind::Unknown));
  if (v.kind == SolverVerdict::Kind::Timeout) CHECK(v.seconds >= 1.0);
}
