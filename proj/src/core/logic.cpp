#include "geocheck/core/logic.hpp"

#include <algorithm>
#include <sstream>

namespace geocheck {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SortMismatch: return "SortMismatch";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::CyclicDefinition: return "CyclicDefinition";
    case ErrorCode::UnknownRule: return "UnknownRule";
    case ErrorCode::ForwardReference: return "ForwardReference";
    case ErrorCode::AxiomFileMissing: return "AxiomFileMissing";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SortAnnotationMissing: return "SortAnnotationMissing";
    case ErrorCode::UnknownTactic: return "UnknownTactic";
    case ErrorCode::UnsupportedSyntax: return "UnsupportedSyntax";
    case ErrorCode::NotAUniversal: return "NotAUniversal";
    case ErrorCode::PremiseNotEstablished: return "PremiseNotEstablished";
    case ErrorCode::WitnessCountMismatch: return "WitnessCountMismatch";
    case ErrorCode::GoalNotClosed: return "GoalNotClosed";
    case ErrorCode::NotAnExistential: return "NotAnExistential";
    case ErrorCode::NotAConjunction: return "NotAConjunction";
    case ErrorCode::NotADisjunction: return "NotADisjunction";
    case ErrorCode::NameClash: return "NameClash";
    case ErrorCode::InferenceBoundExceeded: return "InferenceBoundExceeded";
    case ErrorCode::ProofIncomplete: return "ProofIncomplete";
    case ErrorCode::NoActiveGoal: return "NoActiveGoal";
    case ErrorCode::UnexpandedDefinition: return "UnexpandedDefinition";
    case ErrorCode::UnknownConstant: return "UnknownConstant";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::SolverNotFound: return "SolverNotFound";
    case ErrorCode::ProtocolError: return "ProtocolError";
    case ErrorCode::UnassignedName: return "UnassignedName";
    case ErrorCode::DegenerateAngle: return "DegenerateAngle";
    case ErrorCode::InvalidManifest: return "InvalidManifest";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

std::string_view sort_name(Sort sort) {
  switch (sort) {
    case Sort::Point: return "Point";
    case Sort::Line: return "Line";
    case Sort::Circle: return "Circle";
    case Sort::Real: return "ℝ";
    case Sort::Prop: return "Prop";
  }
  return "?";
}

std::optional<Sort> sort_from_name(std::string_view name) {
  if (name == "Point") return Sort::Point;
  if (name == "Line") return Sort::Line;
  if (name == "Circle") return Sort::Circle;
  if (name == "ℝ" || name == "Real") return Sort::Real;
  if (name == "Prop") return Sort::Prop;
  return std::nullopt;
}

std::string rational_to_string(const Rational& value) {
  std::ostringstream os;
  os << value.numerator();
  if (value.denominator() != 1) os << '/' << value.denominator();
  return os.str();
}

// ---------------------------------------------------------------------------
// Terms

TermPtr Term::var(std::string name, Sort sort) {
  return TermPtr(new Term(Kind::Var, std::move(name), sort, Rational(0), {}));
}

TermPtr Term::num(Rational value) {
  return TermPtr(new Term(Kind::Num, {}, Sort::Real, value, {}));
}

TermPtr Term::app(std::string fn, std::vector<TermPtr> args) {
  return TermPtr(new Term(Kind::App, std::move(fn), Sort::Real, Rational(0), std::move(args)));
}

namespace term {

TermPtr length(TermPtr a, TermPtr b) { return Term::app(std::string(fn::kLength), {std::move(a), std::move(b)}); }
TermPtr angle(TermPtr a, TermPtr b, TermPtr c) {
  return Term::app(std::string(fn::kAngle), {std::move(a), std::move(b), std::move(c)});
}
TermPtr area(TermPtr a, TermPtr b, TermPtr c) {
  return Term::app(std::string(fn::kArea), {std::move(a), std::move(b), std::move(c)});
}
TermPtr right_angle() { return Term::app(std::string(fn::kRightAngle), {}); }
TermPtr pi() { return Term::app(std::string(fn::kPi), {}); }
TermPtr sin(TermPtr x) { return Term::app(std::string(fn::kSin), {std::move(x)}); }
TermPtr cos(TermPtr x) { return Term::app(std::string(fn::kCos), {std::move(x)}); }
TermPtr add(TermPtr x, TermPtr y) { return Term::app(std::string(fn::kAdd), {std::move(x), std::move(y)}); }
TermPtr sub(TermPtr x, TermPtr y) { return Term::app(std::string(fn::kSub), {std::move(x), std::move(y)}); }
TermPtr mul(TermPtr x, TermPtr y) { return Term::app(std::string(fn::kMul), {std::move(x), std::move(y)}); }

TermPtr div(TermPtr x, TermPtr y) {
  if (x->kind() == Term::Kind::Num && y->kind() == Term::Kind::Num && y->value() != Rational(0))
    return Term::num(x->value() / y->value());
  return Term::app(std::string(fn::kDiv), {std::move(x), std::move(y)});
}

TermPtr neg(TermPtr x) {
  if (x->kind() == Term::Kind::Num) return Term::num(-x->value());
  return Term::app(std::string(fn::kNeg), {std::move(x)});
}

TermPtr num(std::int64_t n, std::int64_t d) { return Term::num(Rational(n, d)); }

}  // namespace term

// ---------------------------------------------------------------------------
// Formulas

FormulaPtr Formula::pred(std::string name, std::vector<TermPtr> args) {
  auto f = std::shared_ptr<Formula>(new Formula(Kind::Pred));
  f->name_ = std::move(name);
  f->args_ = std::move(args);
  return f;
}

FormulaPtr Formula::cmp(CmpOp op, TermPtr lhs, TermPtr rhs) {
  auto f = std::shared_ptr<Formula>(new Formula(Kind::Cmp));
  f->op_ = op;
  f->args_ = {std::move(lhs), std::move(rhs)};
  return f;
}

FormulaPtr Formula::mk_not(FormulaPtr g) {
  auto f = std::shared_ptr<Formula>(new Formula(Kind::Not));
  f->subs_ = {std::move(g)};
  return f;
}

FormulaPtr Formula::mk_and(std::vector<FormulaPtr> fs) {
  if (fs.empty()) return top();
  if (fs.size() == 1) return fs.front();
  auto f = std::shared_ptr<Formula>(new Formula(Kind::And));
  f->subs_ = std::move(fs);
  return f;
}

FormulaPtr Formula::mk_or(std::vector<FormulaPtr> fs) {
  if (fs.empty()) return bottom();
  if (fs.size() == 1) return fs.front();
  auto f = std::shared_ptr<Formula>(new Formula(Kind::Or));
  f->subs_ = std::move(fs);
  return f;
}

FormulaPtr Formula::implies(FormulaPtr lhs, FormulaPtr rhs) {
  auto f = std::shared_ptr<Formula>(new Formula(Kind::Implies));
  f->subs_ = {std::move(lhs), std::move(rhs)};
  return f;
}

FormulaPtr Formula::iff(FormulaPtr lhs, FormulaPtr rhs) {
  auto f = std::shared_ptr<Formula>(new Formula(Kind::Iff));
  f->subs_ = {std::move(lhs), std::move(rhs)};
  return f;
}

FormulaPtr Formula::forall(std::vector<Binder> binders, FormulaPtr body) {
  if (binders.empty()) return body;
  auto f = std::shared_ptr<Formula>(new Formula(Kind::Forall));
  f->binders_ = std::move(binders);
  f->subs_ = {std::move(body)};
  return f;
}

FormulaPtr Formula::exists(std::vector<Binder> binders, FormulaPtr body) {
  if (binders.empty()) return body;
  auto f = std::shared_ptr<Formula>(new Formula(Kind::Exists));
  f->binders_ = std::move(binders);
  f->subs_ = {std::move(body)};
  return f;
}

FormulaPtr Formula::top() {
  static const FormulaPtr t(new Formula(Kind::True));
  return t;
}

FormulaPtr Formula::bottom() {
  static const FormulaPtr f(new Formula(Kind::False));
  return f;
}

FormulaPtr mk_eq_object(TermPtr a, TermPtr b) {
  std::string_view name = pred::kEqPoint;
  switch (a->sort()) {
    case Sort::Point: name = pred::kEqPoint; break;
    case Sort::Line: name = pred::kEqLine; break;
    case Sort::Circle: name = pred::kEqCircle; break;
    default: throw Error(ErrorCode::SortMismatch, "object equality on a non-object sort");
  }
  if (b->sort() != a->sort()) throw Error(ErrorCode::SortMismatch, "equality between different sorts");
  return Formula::pred(std::string(name), {std::move(a), std::move(b)});
}

bool is_equality_predicate(std::string_view name) {
  return name == pred::kEqPoint || name == pred::kEqLine || name == pred::kEqCircle;
}

// ---------------------------------------------------------------------------
// Comparison

namespace {

template <typename T>
int cmp3(const T& a, const T& b) {
  return a < b ? -1 : (b < a ? 1 : 0);
}

}  // namespace

int compare(const Term& a, const Term& b) {
  if (&a == &b) return 0;
  if (int c = cmp3(a.kind(), b.kind())) return c;
  if (int c = cmp3(a.sort(), b.sort())) return c;
  if (int c = a.name().compare(b.name())) return c < 0 ? -1 : 1;
  if (int c = cmp3(a.value(), b.value())) return c;
  if (int c = cmp3(a.args().size(), b.args().size())) return c;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (int c = compare(*a.args()[i], *b.args()[i])) return c;
  return 0;
}

int compare(const Formula& a, const Formula& b) {
  if (&a == &b) return 0;
  if (int c = cmp3(a.kind(), b.kind())) return c;
  if (int c = a.name().compare(b.name())) return c < 0 ? -1 : 1;
  if (int c = cmp3(a.op(), b.op())) return c;
  if (int c = cmp3(a.binders().size(), b.binders().size())) return c;
  for (std::size_t i = 0; i < a.binders().size(); ++i) {
    if (int c = a.binders()[i].name.compare(b.binders()[i].name)) return c < 0 ? -1 : 1;
    if (int c = cmp3(a.binders()[i].sort, b.binders()[i].sort)) return c;
  }
  if (int c = cmp3(a.args().size(), b.args().size())) return c;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (int c = compare(*a.args()[i], *b.args()[i])) return c;
  if (int c = cmp3(a.subs().size(), b.subs().size())) return c;
  for (std::size_t i = 0; i < a.subs().size(); ++i)
    if (int c = compare(*a.subs()[i], *b.subs()[i])) return c;
  return 0;
}

bool equal(const TermPtr& a, const TermPtr& b) {
  if (!a || !b) return a == b;
  return compare(*a, *b) == 0;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (!a || !b) return a == b;
  return compare(*a, *b) == 0;
}

std::string_view rule_kind_name(RuleKind kind) {
  switch (kind) {
    case RuleKind::Construction: return "construction";
    case RuleKind::Inference: return "inference";
    case RuleKind::Definition: return "definition";
    case RuleKind::Theorem: return "theorem";
  }
  return "?";
}

FormulaPtr Rule::statement() const {
  FormulaPtr body = premise && !premise->is(Formula::Kind::True) ? Formula::implies(premise, conclusion)
                                                                  : Formula::implies(Formula::top(), conclusion);
  return Formula::forall(params, body);
}

bool equal(const Rule& a, const Rule& b) {
  return a.name == b.name && a.kind == b.kind && a.params == b.params && equal(a.premise, b.premise) &&
         equal(a.conclusion, b.conclusion);
}

// ---------------------------------------------------------------------------
// Free variables

namespace {

void collect(const TermPtr& t, VarSet& out) {
  if (t->is_var()) {
    out.emplace(t->name(), t->sort());
    return;
  }
  for (const auto& a : t->args()) collect(a, out);
}

void collect(const FormulaPtr& f, const std::set<std::string>& bound, VarSet& out) {
  switch (f->kind()) {
    case Formula::Kind::Pred:
    case Formula::Kind::Cmp: {
      VarSet local;
      for (const auto& a : f->args()) collect(a, local);
      for (const auto& v : local)
        if (!bound.count(v.first)) out.insert(v);
      return;
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      std::set<std::string> inner = bound;
      for (const auto& b : f->binders()) inner.insert(b.name);
      collect(f->body(), inner, out);
      return;
    }
    default:
      for (const auto& s : f->subs()) collect(s, bound, out);
  }
}

}  // namespace

VarSet free_vars(const TermPtr& t) {
  VarSet out;
  collect(t, out);
  return out;
}

VarSet free_vars(const FormulaPtr& f) {
  VarSet out;
  collect(f, {}, out);
  return out;
}

std::set<std::string> free_var_names(const FormulaPtr& f) {
  std::set<std::string> out;
  for (const auto& v : free_vars(f)) out.insert(v.first);
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

void Substitution::bind(const std::string& name, Sort sort, TermPtr t) {
  if (t->sort() != sort)
    throw Error(ErrorCode::SortMismatch, "cannot substitute a " + std::string(sort_name(t->sort())) +
                                             " term for " + name + " : " + std::string(sort_name(sort)));
  map_[name] = {sort, std::move(t)};
}

const TermPtr* Substitution::find(const std::string& name) const {
  auto it = map_.find(name);
  return it == map_.end() ? nullptr : &it->second.second;
}

std::set<std::string> Substitution::range_names() const {
  std::set<std::string> out;
  for (const auto& [name, entry] : map_)
    for (const auto& v : free_vars(entry.second)) out.insert(v.first);
  return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  std::string candidate = base;
  while (used.count(candidate)) candidate += "′";
  return candidate;
}

TermPtr substitute(const TermPtr& t, const Substitution& s) {
  if (t->is_var()) {
    auto it = s.entries().find(t->name());
    if (it == s.entries().end()) return t;
    if (it->second.first != t->sort())
      throw Error(ErrorCode::SortMismatch, "variable " + t->name() + " occurs with sort " +
                                               std::string(sort_name(t->sort())));
    return it->second.second;
  }
  if (t->args().empty()) return t;
  std::vector<TermPtr> args;
  args.reserve(t->args().size());
  bool changed = false;
  for (const auto& a : t->args()) {
    args.push_back(substitute(a, s));
    changed |= args.back() != a;
  }
  return changed ? Term::app(t->name(), std::move(args)) : t;
}

FormulaPtr substitute(const FormulaPtr& f, const Substitution& s) {
  if (s.empty()) return f;
  switch (f->kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False: return f;
    case Formula::Kind::Pred:
    case Formula::Kind::Cmp: {
      std::vector<TermPtr> args;
      bool changed = false;
      for (const auto& a : f->args()) {
        args.push_back(substitute(a, s));
        changed |= args.back() != a;
      }
      if (!changed) return f;
      if (f->is(Formula::Kind::Cmp)) return Formula::cmp(f->op(), args[0], args[1]);
      return Formula::pred(f->name(), std::move(args));
    }
    case Formula::Kind::Not: {
      auto g = substitute(f->sub(0), s);
      return g == f->sub(0) ? f : Formula::mk_not(g);
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff: {
      std::vector<FormulaPtr> subs;
      bool changed = false;
      for (const auto& g : f->subs()) {
        subs.push_back(substitute(g, s));
        changed |= subs.back() != g;
      }
      if (!changed) return f;
      switch (f->kind()) {
        case Formula::Kind::And: return Formula::mk_and(std::move(subs));
        case Formula::Kind::Or: return Formula::mk_or(std::move(subs));
        case Formula::Kind::Implies: return Formula::implies(subs[0], subs[1]);
        default: return Formula::iff(subs[0], subs[1]);
      }
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      Substitution inner = s;
      for (const auto& b : f->binders()) inner.erase(b.name);
      if (inner.empty()) return f;
      const std::set<std::string> range = inner.range_names();
      std::set<std::string> used = range;
      for (const auto& n : free_var_names(f->body())) used.insert(n);
      for (const auto& [name, entry] : inner.entries()) used.insert(name);
      for (const auto& b : f->binders()) used.insert(b.name);
      std::vector<Binder> binders;
      bool renamed = false;
      for (const auto& b : f->binders()) {
        if (range.count(b.name)) {
          std::string fresh = fresh_name(b.name, used);
          used.insert(fresh);
          inner.bind(b.name, b.sort, Term::var(fresh, b.sort));
          binders.push_back({fresh, b.sort});
          renamed = true;
        } else {
          binders.push_back(b);
        }
      }
      auto body = substitute(f->body(), inner);
      if (!renamed && body == f->body()) return f;
      return f->is(Formula::Kind::Forall) ? Formula::forall(std::move(binders), body)
                                          : Formula::exists(std::move(binders), body);
    }
  }
  return f;
}

Instantiation instantiate_rule(const Rule& r, const std::vector<TermPtr>& args) {
  if (args.size() != r.params.size())
    throw Error(ErrorCode::ArityMismatch, r.name + " expects " + std::to_string(r.params.size()) +
                                              " arguments, got " + std::to_string(args.size()));
  Substitution s;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i]->sort() != r.params[i].sort)
      throw Error(ErrorCode::SortMismatch, r.name + ": argument " + std::to_string(i + 1) + " (" +
                                               r.params[i].name + ") expects " +
                                               std::string(sort_name(r.params[i].sort)) + ", got " +
                                               std::string(sort_name(args[i]->sort())));
    s.bind(r.params[i].name, r.params[i].sort, args[i]);
  }
  return {substitute(r.premise ? r.premise : Formula::top(), s), substitute(r.conclusion, s)};
}

std::vector<FormulaPtr> conjuncts(const FormulaPtr& f) {
  std::vector<FormulaPtr> out;
  if (f->is(Formula::Kind::True)) return out;
  if (!f->is(Formula::Kind::And)) return {f};
  for (const auto& g : f->subs()) {
    auto inner = conjuncts(g);
    out.insert(out.end(), inner.begin(), inner.end());
  }
  return out;
}

std::vector<FormulaPtr> disjuncts(const FormulaPtr& f) {
  if (!f->is(Formula::Kind::Or)) return {f};
  std::vector<FormulaPtr> out;
  for (const auto& g : f->subs()) {
    auto inner = disjuncts(g);
    out.insert(out.end(), inner.begin(), inner.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

TermPtr rename_term(const TermPtr& t, const std::map<std::string, std::string>& renames) {
  if (t->is_var()) {
    auto it = renames.find(t->name());
    return it == renames.end() ? t : Term::var(it->second, t->sort());
  }
  if (t->args().empty()) return t;
  std::vector<TermPtr> args;
  for (const auto& a : t->args()) args.push_back(rename_term(a, renames));
  return Term::app(t->name(), std::move(args));
}

// Binders are named after their de Bruijn level, so sibling quantifiers at the
// same depth receive the same names and AC-sorting stays order independent.
FormulaPtr rename_binders(const FormulaPtr& f, std::size_t depth, const std::map<std::string, std::string>& renames) {
  switch (f->kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False: return f;
    case Formula::Kind::Pred:
    case Formula::Kind::Cmp: {
      std::vector<TermPtr> args;
      for (const auto& a : f->args()) args.push_back(rename_term(a, renames));
      if (f->is(Formula::Kind::Cmp)) return Formula::cmp(f->op(), args[0], args[1]);
      return Formula::pred(f->name(), std::move(args));
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      auto inner = renames;
      std::vector<Binder> binders;
      for (const auto& b : f->binders()) {
        std::string name = "%" + std::to_string(depth++);
        inner[b.name] = name;
        binders.push_back({name, b.sort});
      }
      auto body = rename_binders(f->body(), depth, inner);
      return f->is(Formula::Kind::Forall) ? Formula::forall(std::move(binders), body)
                                          : Formula::exists(std::move(binders), body);
    }
    default: {
      std::vector<FormulaPtr> subs;
      for (const auto& g : f->subs()) subs.push_back(rename_binders(g, depth, renames));
      switch (f->kind()) {
        case Formula::Kind::Not: return Formula::mk_not(subs[0]);
        case Formula::Kind::And: return Formula::mk_and(std::move(subs));
        case Formula::Kind::Or: return Formula::mk_or(std::move(subs));
        case Formula::Kind::Implies: return Formula::implies(subs[0], subs[1]);
        default: return Formula::iff(subs[0], subs[1]);
      }
    }
  }
}

FormulaPtr canon(const FormulaPtr& f) {
  switch (f->kind()) {
    case Formula::Kind::Not: {
      auto g = canon(f->sub(0));
      if (g->is(Formula::Kind::Not)) return g->sub(0);
      return Formula::mk_not(g);
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<FormulaPtr> ops;
      for (const auto& g : f->subs()) {
        auto c = canon(g);
        if (c->kind() == f->kind())
          ops.insert(ops.end(), c->subs().begin(), c->subs().end());
        else
          ops.push_back(c);
      }
      std::stable_sort(ops.begin(), ops.end(),
                       [](const FormulaPtr& a, const FormulaPtr& b) { return compare(*a, *b) < 0; });
      return f->is(Formula::Kind::And) ? Formula::mk_and(std::move(ops)) : Formula::mk_or(std::move(ops));
    }
    case Formula::Kind::Implies: return Formula::implies(canon(f->sub(0)), canon(f->sub(1)));
    case Formula::Kind::Iff: return Formula::iff(canon(f->sub(0)), canon(f->sub(1)));
    case Formula::Kind::Forall: return Formula::forall(f->binders(), canon(f->body()));
    case Formula::Kind::Exists: return Formula::exists(f->binders(), canon(f->body()));
    default: return f;
  }
}

}  // namespace

FormulaPtr normalize(const FormulaPtr& f) { return canon(rename_binders(f, 0, {})); }

}  // namespace geocheck
