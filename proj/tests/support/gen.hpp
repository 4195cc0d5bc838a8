#pragma once

// Seeded generators of well-sorted syntax for property tests. Everything is
// built through the same constructors the parser uses, so generated values
// are in the parser's canonical shape.

#include <random>
#include <string>
#include <vector>

#include "geocheck/core/logic.hpp"
#include "geocheck/dsl/syntax.hpp"

namespace gen {

using namespace geocheck;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

  /// Scope with at least one variable of each sort.
  std::vector<Binder> scope() {
    std::vector<Binder> s;
    std::vector<std::string> points = {"A", "B", "C", "D", "O", "P"};
    std::size_t np = 2 + below(4);
    for (std::size_t i = 0; i < np; ++i) s.push_back({points[i], Sort::Point});
    s.push_back({"L", Sort::Line});
    if (chance(0.5)) s.push_back({"AB", Sort::Line});
    s.push_back({"Ω", Sort::Circle});
    if (chance(0.3)) s.push_back({"Γ", Sort::Circle});
    if (chance(0.4)) s.push_back({"x", Sort::Real});
    return s;
  }

  TermPtr var_of(const std::vector<Binder>& scope, Sort sort) {
    std::vector<Binder> c;
    for (const auto& b : scope)
      if (b.sort == sort) c.push_back(b);
    const auto& b = pick(c);
    return Term::var(b.name, b.sort);
  }

  bool has_sort(const std::vector<Binder>& scope, Sort sort) {
    for (const auto& b : scope)
      if (b.sort == sort) return true;
    return false;
  }

  TermPtr literal() {
    static const std::vector<Rational> values = {Rational(1), Rational(2), Rational(3), Rational(1, 2),
                                                 Rational(-1), Rational(7, 3), Rational(-5, 2), Rational(10)};
    return Term::num(pick(values));
  }

  TermPtr real(const std::vector<Binder>& scope, int depth) {
    auto P = [&] { return var_of(scope, Sort::Point); };
    std::size_t leafs = has_sort(scope, Sort::Real) ? 7 : 6;
    if (depth <= 0 || chance(0.35)) {
      switch (below(leafs)) {
        case 0: return literal();
        case 1: return term::length(P(), P());
        case 2: return term::angle(P(), P(), P());
        case 3: return term::area(P(), P(), P());
        case 4: return term::right_angle();
        case 5: return term::pi();
        default: return var_of(scope, Sort::Real);
      }
    }
    auto sub = [&] { return real(scope, depth - 1); };
    switch (below(8)) {
      case 0: return term::add(sub(), sub());
      case 1: return term::sub(sub(), sub());
      case 2: return term::mul(sub(), sub());
      case 3: {
        auto d = sub();
        if (d->kind() == Term::Kind::Num) d = literal();
        return term::div(sub(), d);
      }
      case 4: {
        auto x = sub();
        return x->kind() == Term::Kind::Num ? x : term::neg(x);
      }
      case 5: return term::sin(sub());
      case 6: return term::cos(sub());
      default: return sub();
    }
  }

  FormulaPtr atom(const std::vector<Binder>& scope) {
    auto P = [&] { return var_of(scope, Sort::Point); };
    auto L = [&] { return var_of(scope, Sort::Line); };
    auto C = [&] { return var_of(scope, Sort::Circle); };
    switch (below(16)) {
      case 0: return Formula::pred("onLine", {P(), L()});
      case 1: return Formula::pred("between", {P(), P(), P()});
      case 2: return Formula::pred("onCircle", {P(), C()});
      case 3: return Formula::pred("insideCircle", {P(), C()});
      case 4: return Formula::pred("isCentre", {P(), C()});
      case 5: return Formula::pred("sameSide", {P(), P(), L()});
      case 6: return Formula::pred("opposingSides", {P(), P(), L()});
      case 7: return Formula::pred("intersectsLine", {L(), L()});
      case 8: return mk_eq_object(P(), P());
      case 9: return mk_eq_object(L(), L());
      case 10: return Formula::cmp(CmpOp::Eq, real(scope, 2), real(scope, 2));
      case 11: return Formula::cmp(CmpOp::Lt, real(scope, 2), real(scope, 2));
      case 12: return Formula::cmp(CmpOp::Le, real(scope, 1), real(scope, 2));
      case 13: return Formula::pred("outsideCircle", {P(), C()});
      case 14: return mk_eq_object(C(), C());
      default: return Formula::pred("intersectsCircle", {L(), C()});
    }
  }

  FormulaPtr formula(std::vector<Binder> scope, int depth) {
    if (depth <= 0 || chance(0.3)) {
      if (chance(0.03)) return chance(0.5) ? Formula::top() : Formula::bottom();
      return atom(scope);
    }
    auto sub = [&] { return formula(scope, depth - 1); };
    switch (below(8)) {
      case 0: return Formula::mk_not(sub());
      case 1:
      case 2: {
        std::vector<FormulaPtr> xs(2 + below(2));
        for (auto& x : xs) x = sub();
        return chance(0.5) ? Formula::mk_and(xs) : Formula::mk_or(xs);
      }
      case 3: return Formula::implies(sub(), sub());
      case 4: return Formula::iff(sub(), sub());
      case 5:
      case 6: {
        std::vector<Binder> bs;
        static const std::vector<std::pair<std::string, Sort>> fresh = {
            {"X", Sort::Point}, {"Y", Sort::Point}, {"N", Sort::Line}, {"Δ", Sort::Circle}, {"r", Sort::Real}};
        std::size_t n = 1 + below(2);
        for (std::size_t i = 0; i < n; ++i) {
          auto [name, sort] = fresh[below(fresh.size())];
          name += std::to_string(depth);
          bool dup = false;
          for (const auto& b : bs) dup |= b.name == name;
          if (!dup) bs.push_back({name, sort});
        }
        for (const auto& b : bs) {
          std::erase_if(scope, [&](const Binder& s) { return s.name == b.name; });
          scope.push_back(b);
        }
        auto body = formula(scope, depth - 1);
        return chance(0.5) ? Formula::forall(bs, body) : Formula::exists(bs, body);
      }
      default: return atom(scope);
    }
  }

  Rule rule(const std::string& name) {
    Rule r;
    r.name = name;
    r.kind = RuleKind::Theorem;
    r.params = scope();
    r.premise = chance(0.2) ? Formula::top() : formula(r.params, 2);
    do {
      r.conclusion = formula(r.params, 2);
    } while (r.premise->is(Formula::Kind::True) && r.conclusion->is(Formula::Kind::Implies));
    return r;
  }

  TacticScript script(const std::vector<Binder>& scope, int depth) {
    TacticScript s;
    std::size_t n = 1 + below(4);
    for (std::size_t i = 0; i < n; ++i) s.nodes.push_back(node(scope, depth));
    return s;
  }

  TacticNode node(const std::vector<Binder>& scope, int depth) {
    static const std::vector<std::string> rules = {"line_from_points", "exists_midpoint", "between_symm",
                                                   "congruentTriangles_SAS", "coll_angles_eq", "Thales"};
    static const std::vector<std::string> hyps = {"h", "h1", "h2", "hx", "hABC"};
    TacticNode n;
    using K = TacticNode::Kind;
    std::size_t choice = below(depth > 0 ? 10 : 7);
    switch (choice) {
      case 0: n.kind = K::Intros; break;
      case 1: n.kind = K::Finish; break;
      case 2:
        n.kind = K::Apply;
        n.name = pick(rules);
        for (std::size_t i = below(4); i > 0; --i) {
          std::vector<Sort> sorts = {Sort::Point, Sort::Point, Sort::Line, Sort::Circle};
          n.args.push_back(chance(0.1) ? real(scope, 1) : var_of(scope, pick(sorts)));
        }
        if (chance(0.4)) {
          static const std::vector<std::string> w = {"M", "BC", "E", "F"};
          for (std::size_t i = 1 + below(2); i > 0; --i) n.witnesses.push_back(w[below(w.size())] + std::to_string(i));
        }
        break;
      case 3:
        n.kind = K::Assert;
        n.formula = formula(scope, 1);
        break;
      case 4:
        n.kind = K::ByContra;
        if (chance(0.5)) n.name = pick(hyps);
        break;
      case 5:
        n.kind = K::Use;
        n.term = var_of(scope, Sort::Point);
        break;
      case 6:
        n.kind = K::SplitGoal;
        break;
      case 7:
        n.kind = K::Have;
        if (chance(0.8)) n.name = pick(hyps);
        n.formula = formula(scope, 1);
        n.branches.push_back(script(scope, depth - 1));
        break;
      case 8:
        n.kind = K::ByCases;
        if (chance(0.5)) n.name = pick(hyps);
        n.formula = formula(scope, 1);
        if (chance(0.7)) {
          n.branches.push_back(script(scope, depth - 1));
          n.branches.push_back(script(scope, depth - 1));
        }
        break;
      default:
        n.kind = chance(0.5) ? K::CasesHyp : K::SplitGoal;
        if (n.kind == K::CasesHyp) n.name = pick(hyps);
        for (std::size_t i = below(3); i > 0; --i) n.branches.push_back(script(scope, depth - 1));
        break;
    }
    return n;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gen
