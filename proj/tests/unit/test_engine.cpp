#include "doctest.h"

#include <fstream>
#include <random>
#include <sstream>

#include "geocheck/dsl/parser.hpp"
#include "geocheck/dsl/printer.hpp"
#include "geocheck/engine/engine.hpp"
#include "geocheck/smt/smt.hpp"
#include "support/gen.hpp"

using namespace geocheck;

namespace {

const Theory& library() {
  static Theory th = [] {
    Theory t = Theory::load(default_data_dir() / "theory");
    t.add_directory(default_data_dir() / "library");
    return t;
  }();
  return th;
}

bool have_solver() { return std::string(GEOCHECK_TEST_SOLVER).size() > 0; }

// Closes a goal when it is True, when every conjunct is literally a
// hypothesis, or when the hypotheses contain False or a formula and its
// negation.
SolverVerdict syntactic(const GoalContext& ctx, const FormulaPtr& goal) {
  std::vector<FormulaPtr> hs;
  for (const auto& h : ctx.hyps) hs.push_back(normalize(h.formula));
  auto has = [&](const FormulaPtr& f) {
    auto n = normalize(f);
    return std::any_of(hs.begin(), hs.end(), [&](const FormulaPtr& h) { return equal(h, n); });
  };
  SolverVerdict v;
  v.kind = SolverVerdict::Kind::Sat;
  bool absurd = has(Formula::bottom());
  for (const auto& h : ctx.hyps) absurd |= has(Formula::mk_not(h.formula));
  auto cs = conjuncts(goal);
  if (absurd || std::all_of(cs.begin(), cs.end(), has)) v.kind = SolverVerdict::Kind::Unsat;
  return v;
}

struct Mock {
  std::vector<std::pair<std::string, bool>> calls;  // label, probe
  EngineServices services(const std::vector<Rule>& rules = {}) {
    EngineServices s;
    s.label = "t";
    s.lookup = [rules](const std::string& n) {
      for (const auto& r : rules)
        if (r.name == n) return r;
      return library().lookup_rule(n);
    };
    s.entails = [this](const GoalContext& c, const FormulaPtr& f, const std::string& label, bool probe) {
      calls.emplace_back(label, probe);
      return syntactic(c, f);
    };
    return s;
  }
};

Rule stmt(const std::string& text) { return parse_statement(text, library().symbols()); }

TacticScript script(const Rule& r, const std::string& text) {
  Scope s;
  for (const auto& p : r.params) s[p.name] = p.sort;
  return parse_proof(text, s, library().symbols());
}

CheckReport run(const std::string& statement, const std::string& proof, Mock& m, const std::vector<Rule>& rules = {}) {
  auto r = stmt(statement);
  return run_script(r, script(r, proof), m.services(rules));
}

Rule rule_text(const std::string& name, const std::string& statement) {
  auto r = stmt("theorem " + name + " : " + statement);
  r.kind = RuleKind::Inference;
  return r;
}

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(GEOCHECK_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("intros then finish on an assumption") {
  Mock m;
  auto r = run("theorem t : ∀ (A B : Point), A ≠ B → A ≠ B", "  euclid_intros\n  euclid_finish\n", m);
  CHECK(r.proved());
  CHECK(r.solver_calls == 1);
  CHECK(r.trace[0].tactic == "euclid_finish");
  CHECK(r.trace[0].tactic_index == 1);
  CHECK(m.calls[0].first == "t_1");
}

TEST_CASE("intros state") {
  auto r = stmt("theorem t : ∀ (A B : Point) (L : Line), A.onLine L ∧ B.onLine L → A ≠ B");
  auto st = init_state(r);
  tac_intros(st);
  const auto& g = st.goals.back();
  CHECK(g.context.vars.size() == 3);
  REQUIRE(g.context.hyps.size() == 2);
  CHECK(g.context.hyps[0].name == "h0");
  CHECK(g.context.hyps[1].name == "h1");
  CHECK(g.context.hyps[0].automatic);
  CHECK(render(g.target) == "A ≠ B");
  CHECK_THROWS_AS(tac_intros(st), Error);
}

TEST_CASE("unfinished and failing scripts") {
  Mock m;
  auto r = run("theorem t : ∀ (A B : Point), A ≠ B → B ≠ A", "  euclid_intros\n", m);
  CHECK(r.status == CheckReport::Status::Failed);
  CHECK(r.diagnostic->code == ErrorCode::ProofIncomplete);
  CHECK(r.failed_index == 1u);

  auto f = run("theorem t : ∀ (A B : Point), A ≠ B → B ≠ A", "  euclid_intros\n  euclid_finish\n", m);
  CHECK(f.status == CheckReport::Status::Failed);
  CHECK(f.diagnostic->code == ErrorCode::GoalNotClosed);
  CHECK(f.failed_index == 1u);
  CHECK(f.diagnostic->span.length > 0);
}

TEST_CASE("apply introduces witnesses and conclusions") {
  Mock m;
  auto mid = rule_text("mid", "∀ (A B : Point), A ≠ B → ∃ (M : Point), between A M B ∧ |(A-M)| = |(M-B)|");
  auto r = run("theorem t : ∀ (A B : Point), A ≠ B → ∃ (X : Point), between A X B",
               "  euclid_intros\n  euclid_apply mid A B as D\n  use D\n  euclid_finish\n", m, {mid});
  CHECK(r.proved());
  CHECK(r.solver_calls == 2);

  auto clash = run("theorem t : ∀ (A B : Point), A ≠ B → A ≠ B",
                   "  euclid_intros\n  euclid_apply mid A B as B\n  euclid_finish\n", m, {mid});
  CHECK(clash.diagnostic->code == ErrorCode::NameClash);

  auto count = run("theorem t : ∀ (A B : Point), A ≠ B → A ≠ B",
                   "  euclid_intros\n  euclid_apply mid A B as X Y\n  euclid_finish\n", m, {mid});
  CHECK(count.diagnostic->code == ErrorCode::WitnessCountMismatch);

  auto premise = run("theorem t : ∀ (A B : Point), A = A → A = A",
                     "  euclid_intros\n  euclid_apply mid A B as X\n  euclid_finish\n", m, {mid});
  CHECK(premise.diagnostic->code == ErrorCode::PremiseNotEstablished);

  auto unknown = run("theorem t : ∀ (A : Point), A = A", "  euclid_apply nothing_here A\n", m);
  CHECK(unknown.diagnostic->code == ErrorCode::UnknownRule);
}

TEST_CASE("a rule with a true premise applies without a solver call") {
  Mock m;
  auto tri = rule_text("tri", "∀ (A B C : Point), Triangle A B C");
  auto r = run("theorem t : ∀ (A B C : Point), Triangle A B C", "  euclid_intros\n  euclid_apply tri A B C\n  euclid_finish\n",
               m, {tri});
  CHECK(r.proved());
  CHECK(r.solver_calls == 1);
}

TEST_CASE("argument inference is bounded and marks probes") {
  Mock m;
  auto sym = rule_text("sym", "∀ (A B C : Point), between A B C → between C B A");
  auto r = run("theorem t : ∀ (P Q R S : Point), between P Q R → between R Q P",
               "  euclid_intros\n  euclid_apply sym\n  euclid_finish\n", m, {sym});
  CHECK(r.proved());
  REQUIRE(r.trace.size() >= 2);
  CHECK(r.trace.front().probe);
  CHECK(r.trace[r.trace.size() - 2].inferred);
  CHECK_FALSE(r.trace.back().probe);

  EngineServices s = m.services({sym});
  s.inference_bound = 10;
  auto st = stmt("theorem t : ∀ (P Q R S : Point), between P Q R → between R Q P");
  auto small = run_script(st, script(st, "  euclid_intros\n  euclid_apply sym\n"), s);
  CHECK(small.diagnostic->code == ErrorCode::InferenceBoundExceeded);

  // A given prefix is kept.
  auto partial = run("theorem t : ∀ (P Q R S : Point), between P Q R → between R Q P",
                     "  euclid_intros\n  euclid_apply sym P\n  euclid_finish\n", m, {sym});
  CHECK(partial.proved());
}

TEST_CASE("structural tactics") {
  Mock m;
  SUBCASE("by_cases needs both branches") {
    auto r = run("theorem t : ∀ (A B : Point) (L : Line), A.onLine L → A.onLine L",
                 "  euclid_intros\n  by_cases B.onLine L\n  · euclid_finish\n  · euclid_finish\n", m);
    CHECK(r.proved());
    CHECK(r.solver_calls == 2);
    CHECK(r.trace[1].tactic_index == 3);
  }
  SUBCASE("by_contra") {
    auto r = run("theorem t : ∀ (A B : Point), A ≠ B → A ≠ B", "  euclid_intros\n  by_contra h\n  euclid_finish\n", m);
    CHECK(r.proved());
  }
  SUBCASE("have and assert") {
    auto r = run("theorem t : ∀ (A B : Point), A ≠ B ∧ B ≠ A → B ≠ A",
                 "  euclid_intros\n  have hx : B ≠ A := by\n    euclid_finish\n  euclid_assert A ≠ B\n  euclid_finish\n", m);
    CHECK(r.proved());
    CHECK(r.solver_calls == 3);
    CHECK(r.trace[1].tactic == "euclid_assert");
    auto bad = run("theorem t : ∀ (A B : Point), A ≠ B → A ≠ B", "  euclid_intros\n  euclid_assert A = B\n", m);
    CHECK(bad.diagnostic->code == ErrorCode::GoalNotClosed);
    CHECK(bad.failed_index == 1u);
  }
  SUBCASE("cases") {
    auto ok = run("theorem t : ∀ (A B : Point) (L : Line), A.onLine L ∨ B.onLine L → A.onLine L ∨ B.onLine L",
                  "  euclid_intros\n  cases h0\n  · euclid_finish\n  · euclid_finish\n", m);
    CHECK(ok.proved());
    CHECK(ok.solver_calls == 2);
    // the second branch only knows B.onLine L
    auto r = run("theorem t : ∀ (A B : Point) (L : Line), A.onLine L ∨ B.onLine L → A.onLine L",
                 "  euclid_intros\n  cases h0\n  · euclid_finish\n  · euclid_finish\n", m);
    CHECK(r.diagnostic->code == ErrorCode::GoalNotClosed);
    CHECK(r.failed_index == 3u);
    auto nd = run("theorem t : ∀ (A B : Point), A ≠ B → A ≠ B", "  euclid_intros\n  cases h0\n", m);
    CHECK(nd.diagnostic->code == ErrorCode::NotADisjunction);
    auto nh = run("theorem t : ∀ (A B : Point), A ≠ B → A ≠ B", "  euclid_intros\n  cases h7\n", m);
    CHECK(nh.diagnostic->code == ErrorCode::UnknownSymbol);
  }
  SUBCASE("constructor") {
    auto s = run("theorem t : ∀ (A B : Point), A ≠ B ∧ B ≠ A → A ≠ B ∧ B ≠ A",
                 "  euclid_intros\n  constructor\n  euclid_finish\n  euclid_finish\n", m);
    CHECK(s.proved());
    auto bad = run("theorem t : ∀ (A B : Point), A ≠ B → A ≠ B", "  euclid_intros\n  constructor\n", m);
    CHECK(bad.diagnostic->code == ErrorCode::NotAConjunction);
  }
  SUBCASE("use") {
    auto r = run("theorem t : ∀ (A B : Point), A ≠ B → ∃ (X : Point), A ≠ X",
                 "  euclid_intros\n  use B\n  euclid_finish\n", m);
    CHECK(r.proved());
    auto ne = run("theorem t : ∀ (A B : Point), A ≠ B → A ≠ B", "  euclid_intros\n  use A\n", m);
    CHECK(ne.diagnostic->code == ErrorCode::NotAnExistential);
  }
  SUBCASE("no goal left") {
    auto r = run("theorem t : ∀ (A B : Point), A ≠ B → A ≠ B", "  euclid_intros\n  euclid_finish\n  euclid_finish\n", m);
    CHECK(r.diagnostic->code == ErrorCode::NoActiveGoal);
    CHECK(r.failed_index == 2u);
  }
}

TEST_CASE("have failure leaves the outer context untouched") {
  Mock m;
  auto r = stmt("theorem t : ∀ (A B : Point), A ≠ B → A ≠ B");
  auto st = init_state(r);
  tac_intros(st);
  auto before = st.goals.back().context.hyps.size();
  auto s = script(r, "  have hx : B = A := by\n    euclid_finish\n");
  auto svc = m.services();
  auto body = [&](const TacticScript&, std::size_t first) { tac_finish(st, svc, first); };
  CHECK_THROWS_AS(tac_structural(st, s.nodes[0], svc, 1, body), Error);
  CHECK(st.goals.front().context.hyps.size() == before);

  auto report = run_script(r, script(r, "  euclid_intros\n  have hx : B = A := by\n    euclid_finish\n  euclid_finish\n"),
                           m.services());
  CHECK(report.failed_index == 2u);
  CHECK(report.diagnostic->code == ErrorCode::GoalNotClosed);
}

TEST_CASE("hypothesis names") {
  Mock m;
  // a user name may shadow an automatic one
  auto r = run("theorem t : ∀ (A B : Point), A ≠ B → A ≠ B",
               "  euclid_intros\n  have h0 : A ≠ B := by\n    euclid_finish\n  euclid_finish\n", m);
  CHECK(r.proved());
  // but not another user name
  auto c = run("theorem t : ∀ (A B : Point), A ≠ B → A ≠ B",
               "  euclid_intros\n  have hx : A ≠ B := by\n    euclid_finish\n"
               "  have hx : A ≠ B := by\n    euclid_finish\n  euclid_finish\n",
               m);
  CHECK(c.diagnostic->code == ErrorCode::NameClash);
}

TEST_CASE("property: hypotheses are never removed") {
  gen::Gen g(31);
  std::mt19937_64 rng(31);
  for (int round = 0; round < 200; ++round) {
    auto scope = g.scope();
    Rule r;
    r.name = "t";
    r.params = scope;
    r.premise = g.formula(scope, 1);
    r.conclusion = Formula::bottom();
    auto st = init_state(r);
    tac_intros(st);
    EngineServices yes;
    yes.label = "p";
    yes.lookup = [](const std::string& n) { return library().lookup_rule(n); };
    yes.entails = [](const GoalContext&, const FormulaPtr&, const std::string&, bool) {
      SolverVerdict v;
      v.kind = SolverVerdict::Kind::Unsat;
      return v;
    };
    std::function<void(const TacticScript&, std::size_t)> body = [&](const TacticScript& s, std::size_t) {
      for (const auto& n : s.nodes)
        if (n.kind == TacticNode::Kind::Finish) tac_finish(st, yes, 0);
    };
    for (int step = 0; step < 6; ++step) {
      auto before = st.goals.back().context.hyps;
      TacticNode n;
      switch (rng() % 4) {
        case 0:
          n.kind = TacticNode::Kind::Assert;
          n.formula = g.atom(scope);
          break;
        case 1:
          n.kind = TacticNode::Kind::Have;
          n.formula = g.atom(scope);
          n.branches.push_back(TacticScript{{TacticNode{}}});
          break;
        case 2:
          n.kind = TacticNode::Kind::ByCases;
          n.formula = g.atom(scope);
          break;
        default: n.kind = TacticNode::Kind::ByContra; break;
      }
      tac_structural(st, n, yes, step, body);
      const auto& after = st.goals.back().context.hyps;
      REQUIRE(after.size() >= before.size());
      for (std::size_t i = 0; i < before.size(); ++i) CHECK(equal(after[i].formula, before[i].formula));
      CHECK(after.size() == before.size() + 1);
    }
  }
}

TEST_CASE("the isosceles proof checks against the solver" * doctest::skip(!have_solver())) {
  SmtConfig cfg;
  cfg.solver.path = GEOCHECK_TEST_SOLVER;
  cfg.solver.timeout_secs = 60;
  // Checked at the end of the library so that every lemma is visible.
  Theory th = Theory::load(default_data_dir() / "theory");
  th.add_directory(default_data_dir() / "library");
  SmtSession session(th, cfg);
  auto decls = parse_library(slurp("isosceles.geo"), th.symbols());
  const auto& t = std::get<TheoremEntry>(decls[0].value);
  EngineServices s;
  s.label = "iso";
  s.lookup = [&](const std::string& n) { return th.lookup_rule(n, *th.theorem_index("isoTriangle_imp_eq_angles")); };
  s.entails = [&](const GoalContext& c, const FormulaPtr& f, const std::string& l, bool probe) {
    return session.entails(c, f, l, probe ? std::optional<double>(5.0) : std::nullopt);
  };
  s.expand = [&](const FormulaPtr& f) { return th.definitions().expand(f); };
  auto r = run_script(t.rule, *t.proof, s);
  CHECK(r.proved());
  std::size_t probes = 0;
  for (const auto& e : r.trace) probes += e.probe;
  CHECK(r.trace.size() - probes == 4);
  CHECK(r.trace.back().tactic == "euclid_finish");
  CHECK(r.trace.back().verdict.unsat());
  CHECK(session.solver_calls() == r.solver_calls);

  // The scalene variant fails at its final obligation or earlier, never proved.
  auto bad = t.rule;
  bad.premise = parse_formula("Triangle A B C", {{"A", Sort::Point}, {"B", Sort::Point}, {"C", Sort::Point}},
                              th.symbols());
  auto rb = run_script(bad, *t.proof, s);
  CHECK_FALSE(rb.proved());
}

TEST_CASE("a missing solver is not a proof failure") {
  Mock m;
  auto svc = m.services();
  svc.entails = [](const GoalContext&, const FormulaPtr&, const std::string&, bool) -> SolverVerdict {
    throw Error(ErrorCode::SolverNotFound, "no solver");
  };
  auto r = stmt("theorem t : ∀ (A B : Point), A ≠ B → A ≠ B");
  CHECK_THROWS_AS(run_script(r, script(r, "  euclid_intros\n  euclid_finish\n"), svc), Error);
}

TEST_CASE("a timeout on the last obligation reports Timeout") {
  Mock m;
  auto svc = m.services();
  svc.entails = [](const GoalContext&, const FormulaPtr&, const std::string&, bool) {
    SolverVerdict v;
    v.kind = SolverVerdict::Kind::Timeout;
    return v;
  };
  auto r = stmt("theorem t : ∀ (A B : Point), A ≠ B → A ≠ B");
  auto rep = run_script(r, script(r, "  euclid_intros\n  euclid_finish\n"), svc);
  CHECK(rep.status == CheckReport::Status::Timeout);
  CHECK(rep.diagnostic->code == ErrorCode::GoalNotClosed);
}
