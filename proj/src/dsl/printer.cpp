#include "geocheck/dsl/printer.hpp"

#include <set>

namespace geocheck {

namespace {

// Term precedence: 1 additive (and negation), 2 multiplicative, 4 atoms.
int term_level(const TermPtr& t) {
  if (t->kind() == Term::Kind::Num) {
    if (t->value() < Rational(0)) return 1;
    return t->value().denominator() == 1 ? 4 : 2;
  }
  if (t->is_var()) return 4;
  const auto& n = t->name();
  if (n == fn::kAdd || n == fn::kSub || n == fn::kNeg) return 1;
  if (n == fn::kMul || n == fn::kDiv) return 2;
  return 4;
}

std::string term_at(const TermPtr& t, int min_level);

std::string term_str(const TermPtr& t) {
  switch (t->kind()) {
    case Term::Kind::Var: return t->name();
    case Term::Kind::Num: return rational_to_string(t->value());
    case Term::Kind::App: break;
  }
  const auto& n = t->name();
  const auto& a = t->args();
  if (n == fn::kLength) return "|(" + a[0]->name() + "-" + a[1]->name() + ")|";
  if (n == fn::kAngle) return "∠ " + a[0]->name() + ":" + a[1]->name() + ":" + a[2]->name();
  if (n == fn::kArea) return "(△ " + a[0]->name() + ":" + a[1]->name() + ":" + a[2]->name() + ").area";
  if (n == fn::kRightAngle) return "∟";
  if (n == fn::kPi) return "π";
  if (n == fn::kSin) return "Real.sin (" + term_at(a[0], 0) + ")";
  if (n == fn::kCos) return "Real.cos (" + term_at(a[0], 0) + ")";
  if (n == fn::kNeg) return "-" + term_at(a[0], 4);
  if (n == fn::kAdd) return term_at(a[0], 1) + " + " + term_at(a[1], 2);
  if (n == fn::kSub) return term_at(a[0], 1) + " - " + term_at(a[1], 2);
  if (n == fn::kMul) return term_at(a[0], 2) + " * " + term_at(a[1], 3);
  if (n == fn::kDiv) return term_at(a[0], 2) + " / " + term_at(a[1], 3);
  std::string out = n + "(";
  for (std::size_t i = 0; i < a.size(); ++i) out += (i ? ", " : "") + term_at(a[i], 0);
  return out + ")";
}

std::string term_at(const TermPtr& t, int min_level) {
  std::string s = term_str(t);
  return term_level(t) < min_level ? "(" + s + ")" : s;
}

const std::set<std::string, std::less<>>& method_predicates() {
  static const std::set<std::string, std::less<>> m{"onLine",        "onCircle",       "insideCircle",
                                                    "outsideCircle", "isCentre",       "sameSide",
                                                    "opposingSides", "intersectsLine", "intersectsCircle"};
  return m;
}

std::string arg_str(const TermPtr& t) { return t->is_var() ? t->name() : "(" + term_str(t) + ")"; }

// Formula precedence: 0 quantifiers, 1 ↔, 2 →, 3 ∨, 4 ∧, 5 ¬, 6 atoms.
int formula_level(const FormulaPtr& f) {
  switch (f->kind()) {
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: return 0;
    case Formula::Kind::Iff: return 1;
    case Formula::Kind::Implies: return 2;
    case Formula::Kind::Or: return 3;
    case Formula::Kind::And: return 4;
    case Formula::Kind::Not: {
      const auto& g = f->sub(0);
      if ((g->is(Formula::Kind::Pred) && is_equality_predicate(g->name())) ||
          (g->is(Formula::Kind::Cmp) && g->op() == CmpOp::Eq))
        return 6;
      return 5;
    }
    default: return 6;
  }
}

std::string formula_at(const FormulaPtr& f, int min_level);

std::string binders_str(const std::vector<Binder>& bs) {
  std::string out;
  std::size_t i = 0;
  while (i < bs.size()) {
    std::size_t j = i;
    std::string names;
    while (j < bs.size() && bs[j].sort == bs[i].sort) {
      names += (j > i ? " " : "") + bs[j].name;
      ++j;
    }
    out += (i ? " (" : "(") + names + " : " + std::string(sort_name(bs[i].sort)) + ")";
    i = j;
  }
  return out;
}

std::string equality_str(const FormulaPtr& eq, const char* op) {
  if (eq->is(Formula::Kind::Cmp)) return term_at(eq->args()[0], 0) + " " + op + " " + term_at(eq->args()[1], 0);
  return arg_str(eq->args()[0]) + " " + op + " " + arg_str(eq->args()[1]);
}

std::string formula_str(const FormulaPtr& f) {
  using K = Formula::Kind;
  switch (f->kind()) {
    case K::True: return "True";
    case K::False: return "False";
    case K::Pred: {
      const auto& a = f->args();
      if (is_equality_predicate(f->name())) return equality_str(f, "=");
      if (method_predicates().count(f->name()) && !a.empty()) {
        std::string out = arg_str(a[0]) + "." + f->name();
        for (std::size_t i = 1; i < a.size(); ++i) out += " " + arg_str(a[i]);
        return out;
      }
      std::string out = f->name();
      for (const auto& t : a) out += " " + arg_str(t);
      return out;
    }
    case K::Cmp: {
      const char* op = f->op() == CmpOp::Eq ? "=" : f->op() == CmpOp::Lt ? "<" : "≤";
      return term_at(f->args()[0], 0) + " " + op + " " + term_at(f->args()[1], 0);
    }
    case K::Not: {
      if (formula_level(f) == 6) return equality_str(f->sub(0), "≠");
      return "¬" + formula_at(f->sub(0), 5);
    }
    case K::And:
    case K::Or: {
      std::string out;
      const char* sep = f->is(K::And) ? " ∧ " : " ∨ ";
      int lvl = f->is(K::And) ? 5 : 4;
      for (std::size_t i = 0; i < f->subs().size(); ++i) out += (i ? sep : "") + formula_at(f->subs()[i], lvl);
      return out;
    }
    case K::Implies: return formula_at(f->sub(0), 3) + " → " + formula_at(f->sub(1), 2);
    case K::Iff: return formula_at(f->sub(0), 2) + " ↔ " + formula_at(f->sub(1), 2);
    case K::Forall:
    case K::Exists:
      return std::string(f->is(K::Forall) ? "∀ " : "∃ ") + binders_str(f->binders()) + ", " +
             formula_at(f->body(), 0);
  }
  return "?";
}

std::string formula_at(const FormulaPtr& f, int min_level) {
  std::string s = formula_str(f);
  int lvl = formula_level(f);
  // Quantifiers extend as far right as possible, so they are bracketed in
  // every operand position.
  if (lvl < min_level || (lvl == 0 && min_level > 0)) return "(" + s + ")";
  return s;
}

std::string statement_str(const Rule& r) {
  FormulaPtr body;
  if (r.premise->is(Formula::Kind::True) && !r.conclusion->is(Formula::Kind::Implies) &&
      !(r.params.empty() && r.conclusion->is(Formula::Kind::Forall)))
    body = r.conclusion;
  else
    body = Formula::implies(r.premise, r.conclusion);
  std::string out = formula_at(body, 0);
  if (!r.params.empty()) out = "∀ " + binders_str(r.params) + ", " + out;
  return out;
}

void render_script(const TacticScript& s, int indent, std::string& out);

void render_node(const TacticNode& n, int indent, std::string& out) {
  std::string pad(indent, ' ');
  std::string line;
  using K = TacticNode::Kind;
  switch (n.kind) {
    case K::Intros: line = "euclid_intros"; break;
    case K::Finish: line = "euclid_finish"; break;
    case K::Apply:
      line = "euclid_apply " + n.name;
      for (const auto& a : n.args) line += " " + arg_str(a);
      if (!n.witnesses.empty()) {
        line += " as";
        for (const auto& w : n.witnesses) line += " " + w;
      }
      break;
    case K::Assert: line = "euclid_assert " + render(n.formula); break;
    case K::Have:
      line = "have " + (n.name.empty() ? std::string() : n.name + " ") + ": " + render(n.formula) + " := by";
      break;
    case K::ByCases: line = "by_cases " + (n.name.empty() ? std::string() : n.name + " : ") + render(n.formula); break;
    case K::ByContra: line = "by_contra" + (n.name.empty() ? std::string() : " " + n.name); break;
    case K::Use: line = "use " + arg_str(n.term); break;
    case K::SplitGoal: line = "constructor"; break;
    case K::CasesHyp: line = "cases " + n.name; break;
  }
  out += pad + line + "\n";
  if (n.kind == K::Have) {
    if (!n.branches.empty()) render_script(n.branches[0], indent + 2, out);
    return;
  }
  for (const auto& b : n.branches) {
    std::string inner;
    render_script(b, indent + 2, inner);
    // Replace the first line's indentation with the bullet.
    inner.replace(0, static_cast<std::size_t>(indent + 2), pad + "· ");
    out += inner;
  }
}

void render_script(const TacticScript& s, int indent, std::string& out) {
  for (const auto& n : s.nodes) render_node(n, indent, out);
}

}  // namespace

std::string render(const TermPtr& t) { return term_at(t, 0); }

std::string render(const FormulaPtr& f) { return formula_at(f, 0); }

std::string render(const Rule& r) { return "theorem " + r.name + " : " + statement_str(r); }

std::string render(const TacticScript& s, int indent) {
  std::string out;
  render_script(s, indent, out);
  return out;
}

std::string render(const DefinitionEntry& d) {
  std::string out = "def " + d.name;
  if (!d.params.empty()) out += " " + binders_str(d.params);
  return out + " := " + render(d.body);
}

std::string render(const AxiomEntry& a) {
  std::string out = a.euclid_tagged ? "@[euclid]\n" : "";
  return out + "axiom " + a.name + " group " + std::string(axiom_group_name(a.group)) + " : " + statement_str(a.rule);
}

std::string render(const TheoremEntry& t) {
  std::string out = render(t.rule);
  if (t.proof) out += " := by\n" + render(*t.proof, 2);
  return out;
}

}  // namespace geocheck
