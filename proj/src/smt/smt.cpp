#include "geocheck/smt/smt.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "geocheck/theory/signature.hpp"

namespace geocheck {

namespace {

bool is_arithmetic(std::string_view fn) {
  return fn == fn::kAdd || fn == fn::kSub || fn == fn::kMul || fn == fn::kDiv || fn == fn::kNeg;
}

void add_unique(std::vector<std::string>& v, std::string s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(std::move(s));
}

void term_symbols(const TermPtr& t, std::vector<std::string>& out) {
  if (t->kind() != Term::Kind::App) {
    if (t->is_var() && t->sort() != Sort::Real) add_unique(out, std::string(sort_name(t->sort())));
    return;
  }
  if (!is_arithmetic(t->name())) add_unique(out, t->name());
  for (const auto& a : t->args()) term_symbols(a, out);
}

// Constants a formula mentions, in first-occurrence order: sorts of binders,
// predicates and definitions, non-arithmetic functions.
void formula_symbols(const FormulaPtr& f, std::vector<std::string>& out) {
  using K = Formula::Kind;
  switch (f->kind()) {
    case K::True:
    case K::False: return;
    case K::Pred:
      add_unique(out, f->name());
      for (const auto& a : f->args()) term_symbols(a, out);
      return;
    case K::Cmp:
      for (const auto& a : f->args()) term_symbols(a, out);
      return;
    case K::Forall:
    case K::Exists:
      for (const auto& b : f->binders())
        if (b.sort != Sort::Real) add_unique(out, std::string(sort_name(b.sort)));
      formula_symbols(f->body(), out);
      return;
    default:
      for (const auto& g : f->subs()) formula_symbols(g, out);
  }
}

std::string binder_list(const std::vector<Binder>& bs) {
  std::string out = "(";
  for (const auto& b : bs) out += "(" + smt_bound(b.name) + " " + smt_sort(b.sort) + ")";
  return out + ")";
}

}  // namespace

std::string smt_escape(std::string_view name) {
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (char ch : name) {
    auto c = static_cast<unsigned char>(ch);
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')) {
      out += ch;
    } else if (c == '_') {
      out += "__";
    } else {
      out += '_';
      out += hex[c >> 4];
      out += hex[c & 15];
    }
  }
  return out;
}

std::string smt_constant(std::string_view name) { return "c_" + smt_escape(name); }
std::string smt_bound(std::string_view name) { return "x_" + smt_escape(name); }

std::string smt_symbol(std::string_view name) {
  if (name == fn::kPi) return "realPi";
  if (name == fn::kSin) return "realSin";
  if (name == fn::kCos) return "realCos";
  return std::string(name);
}

std::string smt_sort(Sort s) {
  switch (s) {
    case Sort::Point: return "Point";
    case Sort::Line: return "Line";
    case Sort::Circle: return "Circle";
    case Sort::Real: return "Real";
    case Sort::Prop: return "Bool";
  }
  return "?";
}

std::string smt_rational(const Rational& r) {
  auto mag = [](std::int64_t v) { return std::to_string(v < 0 ? -v : v); };
  std::string body = r.denominator() == 1 ? mag(r.numerator()) + ".0"
                                          : "(/ " + mag(r.numerator()) + " " + mag(r.denominator()) + ")";
  return r.numerator() < 0 ? "(- " + body + ")" : body;
}

std::string translate_term(const TermPtr& t, const std::set<std::string>& bound) {
  switch (t->kind()) {
    case Term::Kind::Var: return bound.count(t->name()) ? smt_bound(t->name()) : smt_constant(t->name());
    case Term::Kind::Num: return smt_rational(t->value());
    case Term::Kind::App: break;
  }
  const auto& n = t->name();
  const auto& a = t->args();
  if (n == fn::kNeg) return "(- " + translate_term(a[0], bound) + ")";
  std::string head = n == fn::kAdd   ? "+"
                     : n == fn::kSub ? "-"
                     : n == fn::kMul ? "*"
                     : n == fn::kDiv ? "/"
                                     : smt_symbol(n);
  if (a.empty()) return head;
  std::string out = "(" + head;
  for (const auto& x : a) out += " " + translate_term(x, bound);
  return out + ")";
}

std::string translate_formula(const FormulaPtr& f, const std::set<std::string>& bound) {
  using K = Formula::Kind;
  auto nary = [&](const char* op) {
    std::string out = std::string("(") + op;
    for (const auto& g : f->subs()) out += " " + translate_formula(g, bound);
    return out + ")";
  };
  switch (f->kind()) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Pred: {
      if (!builtin_signature().is_predicate(f->name()))
        throw Error(ErrorCode::UnexpandedDefinition, "definition '" + f->name() + "' reached SMT translation");
      std::string head = is_equality_predicate(f->name()) ? "=" : f->name();
      std::string out = "(" + head;
      for (const auto& a : f->args()) out += " " + translate_term(a, bound);
      return out + ")";
    }
    case K::Cmp: {
      const char* op = f->op() == CmpOp::Eq ? "=" : f->op() == CmpOp::Lt ? "<" : "<=";
      return std::string("(") + op + " " + translate_term(f->args()[0], bound) + " " +
             translate_term(f->args()[1], bound) + ")";
    }
    case K::Not: return "(not " + translate_formula(f->sub(0), bound) + ")";
    case K::And: return nary("and");
    case K::Or: return nary("or");
    case K::Implies: return nary("=>");
    case K::Iff: return nary("=");
    case K::Forall:
    case K::Exists: {
      std::set<std::string> inner = bound;
      for (const auto& b : f->binders()) inner.insert(b.name);
      return std::string(f->is(K::Forall) ? "(forall " : "(exists ") + binder_list(f->binders()) + " " +
             translate_formula(f->body(), inner) + ")";
    }
  }
  return "?";
}

std::vector<SmtCommand> translate_symbol(std::string_view name) {
  for (Sort s : object_sorts())
    if (sort_name(s) == name) return {{SmtCommand::Kind::DeclareSort, "(declare-sort " + smt_sort(s) + " 0)"}};
  const SymbolSig* sig = builtin_signature().lookup(name);
  if (!sig) throw Error(ErrorCode::UnknownConstant, "unknown constant '" + std::string(name) + "'");
  if (is_equality_predicate(name) || is_arithmetic(name)) return {};
  std::string args;
  for (std::size_t i = 0; i < sig->args.size(); ++i) args += (i ? " " : "") + smt_sort(sig->args[i]);
  return {{SmtCommand::Kind::DeclareFun,
           "(declare-fun " + smt_symbol(name) + " (" + args + ") " + smt_sort(sig->result) + ")"}};
}

std::vector<SmtCommand> translate_assertion(const FormulaPtr& closed_expanded) {
  return {{SmtCommand::Kind::Assert, "(assert " + translate_formula(closed_expanded) + ")"}};
}

void DependencyGraph::add_vertex(const std::string& v, std::vector<std::string> deps) {
  if (!deps_.count(v)) order_.push_back(v);
  deps_[v] = std::move(deps);
}

const std::vector<std::string>& DependencyGraph::deps(const std::string& v) const {
  static const std::vector<std::string> none;
  auto it = deps_.find(v);
  return it == deps_.end() ? none : it->second;
}

std::vector<std::string> DependencyGraph::ordered_dfs(const std::vector<std::string>& roots,
                                                      const std::set<std::string>& done) const {
  std::vector<std::string> out;
  std::set<std::string> visited = done;
  std::set<std::string> active;
  std::function<void(const std::string&)> visit = [&](const std::string& v) {
    if (visited.count(v)) return;
    if (active.count(v)) throw Error(ErrorCode::CycleDetected, "dependency cycle through '" + v + "'");
    active.insert(v);
    for (const auto& d : deps(v)) visit(d);
    active.erase(v);
    visited.insert(v);
    out.push_back(v);
  };
  for (const auto& r : roots) visit(r);
  return out;
}

ConstantSource theory_source(const Theory& theory) {
  return [&theory](std::string_view name) -> std::optional<ConstantInfo> {
    for (Sort s : object_sorts())
      if (sort_name(s) == name) return ConstantInfo{{}, translate_symbol(name)};
    if (const SymbolSig* sig = builtin_signature().lookup(name)) {
      ConstantInfo info;
      for (Sort s : sig->args)
        if (s != Sort::Real) add_unique(info.deps, std::string(sort_name(s)));
      info.commands = translate_symbol(name);
      return info;
    }
    if (const DefinitionEntry* d = theory.definitions().find(name)) {
      ConstantInfo info;
      for (const auto& p : d->params)
        if (p.sort != Sort::Real) add_unique(info.deps, std::string(sort_name(p.sort)));
      formula_symbols(d->body, info.deps);
      return info;
    }
    if (const AxiomEntry* a = theory.find_axiom(name)) {
      ConstantInfo info;
      auto stmt = a->rule.statement();
      formula_symbols(stmt, info.deps);
      info.commands = translate_assertion(theory.definitions().expand(stmt));
      return info;
    }
    return std::nullopt;
  };
}

std::vector<SmtCommand> QueryCache::add_commands_for_constant(std::string_view name) {
  const std::string key(name);
  {
    std::shared_lock lock(mutex_);
    if (done_.count(key)) {
      ++hits_;
      return {};
    }
  }
  std::unique_lock lock(mutex_);
  if (done_.count(key)) {
    ++hits_;
    return {};
  }
  // Build the extension on the side so that a failure leaves the cache as it was.
  std::map<std::string, ConstantInfo> fresh;
  std::vector<std::string> order;
  std::set<std::string> active;
  std::function<void(const std::string&)> visit = [&](const std::string& v) {
    if (done_.count(v) || fresh.count(v)) return;
    if (active.count(v)) throw Error(ErrorCode::CycleDetected, "dependency cycle through '" + v + "'");
    auto info = source_(v);
    if (!info) throw Error(ErrorCode::UnknownConstant, "unknown constant '" + v + "'");
    active.insert(v);
    for (const auto& d : info->deps) visit(d);
    active.erase(v);
    fresh.emplace(v, std::move(*info));
    order.push_back(v);
  };
  visit(key);
  std::vector<SmtCommand> emitted;
  for (const auto& v : order) {
    auto& info = fresh.at(v);
    graph_.add_vertex(v, info.deps);
    done_.insert(v);
    constants_.push_back(v);
    for (auto& c : info.commands) {
      commands_.push_back(c);
      emitted.push_back(std::move(c));
    }
  }
  misses_ += order.size();
  return emitted;
}

bool QueryCache::cached(std::string_view name) const {
  std::shared_lock lock(mutex_);
  return done_.count(std::string(name)) > 0;
}

std::vector<SmtCommand> QueryCache::commands() const {
  std::shared_lock lock(mutex_);
  return commands_;
}

std::vector<std::string> QueryCache::cached_constants() const {
  std::shared_lock lock(mutex_);
  return constants_;
}

DependencyGraph QueryCache::graph() const {
  std::shared_lock lock(mutex_);
  return graph_;
}

std::string assemble_query(const std::vector<SmtCommand>& prelude, const GoalContext& context,
                           const FormulaPtr& obligation_expanded, bool get_model) {
  std::string q = "(set-logic ALL)\n";
  for (const auto& c : prelude) q += c.text + "\n";
  std::set<std::string> declared;
  for (const auto& v : context.vars) {
    if (!declared.insert(v.name).second) continue;
    q += "(declare-const " + smt_constant(v.name) + " " + smt_sort(v.sort) + ")\n";
  }
  for (const auto& h : context.hyps) q += "; " + smt_escape(h.name) + "\n(assert " + translate_formula(h.formula) + ")\n";
  q += "; goal\n(assert (not " + translate_formula(obligation_expanded) + "))\n(check-sat)\n";
  if (get_model) q += "(get-model)\n";
  return q;
}

SmtSession::SmtSession(const Theory& theory, SmtConfig config)
    : theory_(theory), config_(std::move(config)), cache_(theory_source(theory)) {}

std::vector<std::string> SmtSession::prelude_roots() const {
  std::vector<std::string> roots;
  for (Sort s : object_sorts()) roots.emplace_back(sort_name(s));
  for (const auto& s : builtin_signature().symbols())
    if (!is_arithmetic(s.name)) roots.push_back(s.name);
  for (const auto& a : theory_.axioms()) {
    if (!a.euclid_tagged) continue;
    if (config_.axiom_allowlist && !config_.axiom_allowlist->count(a.name)) continue;
    roots.push_back(a.name);
  }
  return roots;
}

std::vector<SmtCommand> SmtSession::prelude() {
  auto roots = prelude_roots();
  for (const auto& r : roots) cache_.add_commands_for_constant(r);
  if (!config_.axiom_allowlist) return cache_.commands();
  // With an allowlist only part of the cache belongs to this query; emit it
  // in the cache's order.
  std::set<std::string> wanted;
  auto graph = cache_.graph();
  for (const auto& v : graph.ordered_dfs(roots)) wanted.insert(v);
  std::vector<SmtCommand> out;
  for (const auto& c : cache_.cached_constants()) {
    if (!wanted.count(c)) continue;
    auto info = theory_source(theory_)(c);
    for (auto& cmd : info->commands) out.push_back(std::move(cmd));
  }
  return out;
}

std::string SmtSession::assemble(const GoalContext& context, const FormulaPtr& obligation) {
  GoalContext expanded;
  expanded.vars = context.vars;
  for (const auto& h : context.hyps) expanded.hyps.push_back({h.name, theory_.definitions().expand(h.formula)});
  return assemble_query(prelude(), expanded, theory_.definitions().expand(obligation), config_.get_model);
}

SolverVerdict SmtSession::entails(const GoalContext& context, const FormulaPtr& goal, const std::string& label,
                                  std::optional<double> timeout_secs) {
  std::string query = assemble(context, goal);
  if (config_.dump_dir) {
    std::filesystem::create_directories(*config_.dump_dir);
    char prefix[16];
    std::snprintf(prefix, sizeof prefix, "%04zu_", dumps_.fetch_add(1) + 1);
    std::ofstream out(*config_.dump_dir / (prefix + label + ".smt2"), std::ios::binary);
    out << query;
  }
  SolverConfig sc = config_.solver;
  if (timeout_secs) sc.timeout_secs = *timeout_secs;
  ++calls_;
  return run_solver(query, sc);
}

}  // namespace geocheck
