#include "geocheck/engine/engine.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "geocheck/dsl/parser.hpp"
#include "geocheck/dsl/printer.hpp"

namespace geocheck {

std::string_view status_name(CheckReport::Status s) {
  switch (s) {
    case CheckReport::Status::Proved: return "proved";
    case CheckReport::Status::Failed: return "failed";
    case CheckReport::Status::Timeout: return "timeout";
  }
  return "?";
}

namespace {

ProofGoal& active(ProofState& state) {
  if (state.goals.empty()) throw Error(ErrorCode::NoActiveGoal, "no goals left");
  return state.goals.back();
}

Scope scope_of(const GoalContext& ctx) {
  Scope s;
  for (const auto& v : ctx.vars) s[v.name] = v.sort;
  return s;
}

std::set<std::string> used_names(const GoalContext& ctx) {
  std::set<std::string> used;
  for (const auto& v : ctx.vars) used.insert(v.name);
  return used;
}

std::string auto_name(GoalContext& ctx) {
  while (true) {
    std::string n = "h" + std::to_string(ctx.next_auto++);
    if (!ctx.find_hyp(n)) return n;
  }
}

// An engine-named hypothesis becomes inaccessible when the user reuses its
// name; a user-named one may not be redeclared.
void check_hyp_name(GoalContext& ctx, const std::string& name) {
  auto* old = ctx.find_hyp(name);
  if (!old) return;
  if (!old->automatic) throw Error(ErrorCode::NameClash, "hypothesis '" + name + "' already exists");
  old->name += "\u271d";
}

void add_hyp(GoalContext& ctx, const std::string& name, FormulaPtr f) {
  if (name.empty()) {
    ctx.hyps.push_back({auto_name(ctx), std::move(f), true});
    return;
  }
  check_hyp_name(ctx, name);
  ctx.hyps.push_back({name, std::move(f)});
}

// Script formulas were elaborated before the context existed; give their
// variables the sorts of the context and reject names it does not have.
FormulaPtr in_context(const FormulaPtr& f, const GoalContext& ctx) {
  auto g = resort(f, scope_of(ctx));
  for (const auto& [name, sort] : free_vars(g)) {
    bool ok = false;
    for (const auto& v : ctx.vars) ok |= v.name == name && v.sort == sort;
    if (!ok) throw Error(ErrorCode::UnknownSymbol, "'" + name + "' is not in the proof context");
  }
  return g;
}

TermPtr in_context(const TermPtr& t, const GoalContext& ctx) {
  auto u = resort(t, scope_of(ctx));
  for (const auto& [name, sort] : free_vars(u)) {
    bool ok = false;
    for (const auto& v : ctx.vars) ok |= v.name == name && v.sort == sort;
    if (!ok) throw Error(ErrorCode::UnknownSymbol, "'" + name + "' is not in the proof context");
  }
  return u;
}

std::string label_for(const EngineServices& s, std::size_t index) {
  return (s.label.empty() ? std::string("goal") : s.label) + "_" + std::to_string(index);
}

SolverVerdict discharge(ProofState& state, const GoalContext& ctx, const FormulaPtr& obligation,
                        const EngineServices& services, std::size_t index, const std::string& tactic,
                        bool probe = false, const std::string& note = {}) {
  auto v = services.entails(ctx, obligation, label_for(services, index), probe);
  TraceEntry e;
  e.tactic_index = index;
  e.tactic = tactic;
  e.obligation = render(obligation);
  e.verdict = v;
  e.note = note;
  e.probe = probe;
  state.trace.push_back(std::move(e));
  return v;
}

// Three-valued syntactic evaluation used to discard hopeless candidates
// during argument inference.
std::optional<bool> syntactic_value(const FormulaPtr& f) {
  using K = Formula::Kind;
  switch (f->kind()) {
    case K::True: return true;
    case K::False: return false;
    case K::Pred: {
      const auto& a = f->args();
      if (is_equality_predicate(f->name()) && equal(a[0], a[1])) return true;
      if (f->name() == "between" && (equal(a[0], a[1]) || equal(a[1], a[2]) || equal(a[0], a[2]))) return false;
      if (f->name() == "opposingSides" && equal(a[0], a[1])) return false;
      return std::nullopt;
    }
    case K::Cmp:
      if (equal(f->args()[0], f->args()[1])) return f->op() != CmpOp::Lt;
      return std::nullopt;
    case K::Not: {
      auto v = syntactic_value(f->sub(0));
      if (v) return !*v;
      return std::nullopt;
    }
    case K::And: {
      bool all = true;
      for (const auto& g : f->subs()) {
        auto v = syntactic_value(g);
        if (v && !*v) return false;
        all &= v.has_value();
      }
      if (all) return true;
      return std::nullopt;
    }
    case K::Or: {
      bool all = true;
      for (const auto& g : f->subs()) {
        auto v = syntactic_value(g);
        if (v && *v) return true;
        all &= v.has_value();
      }
      if (all) return false;
      return std::nullopt;
    }
    case K::Implies: {
      auto l = syntactic_value(f->sub(0));
      auto r = syntactic_value(f->sub(1));
      if ((l && !*l) || (r && *r)) return true;
      if (l && r) return *r || !*l;
      return std::nullopt;
    }
    default: return std::nullopt;
  }
}

// Positive primitive atoms reachable through conjunctions.
void positive_atoms(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (f->is(Formula::Kind::And)) {
    for (const auto& g : f->subs()) positive_atoms(g, out);
  } else if (f->is(Formula::Kind::Pred) && !is_equality_predicate(f->name())) {
    out.push_back(f);
  }
}

bool atom_known(const FormulaPtr& atom, const std::vector<FormulaPtr>& known) {
  for (const auto& k : known) {
    if (equal(k, atom)) return true;
    if (atom->name() == "between" && k->is(Formula::Kind::Pred) && k->name() == "between" &&
        equal(k->args()[0], atom->args()[2]) && equal(k->args()[1], atom->args()[1]) &&
        equal(k->args()[2], atom->args()[0]))
      return true;
  }
  return false;
}

bool all_known(const FormulaPtr& f, const GoalContext& ctx) {
  for (const auto& c : conjuncts(f)) {
    bool found = false;
    for (const auto& h : ctx.hyps) found |= equal(normalize(h.formula), normalize(c));
    if (!found) return false;
  }
  return true;
}

void introduce_conclusion(GoalContext& ctx, const Rule& rule, FormulaPtr conclusion,
                          const std::vector<std::string>& witnesses) {
  std::size_t used = 0;
  while (conclusion->is(Formula::Kind::Exists) && (used < witnesses.size() || witnesses.empty())) {
    const auto& binders = conclusion->binders();
    if (!witnesses.empty() && witnesses.size() - used < binders.size())
      throw Error(ErrorCode::WitnessCountMismatch, "'" + rule.name + "' introduces " +
                                                        std::to_string(binders.size() + used) +
                                                        " objects but " + std::to_string(witnesses.size()) +
                                                        " names were given");
    Substitution s;
    auto taken = used_names(ctx);
    for (const auto& n : free_var_names(conclusion)) taken.insert(n);
    for (const auto& b : binders) {
      std::string name;
      if (witnesses.empty()) {
        name = fresh_name(b.name, taken);
      } else {
        name = witnesses[used++];
        if (taken.count(name) || ctx.has_var(name))
          throw Error(ErrorCode::NameClash, "'" + name + "' is already used in the proof context");
      }
      taken.insert(name);
      ctx.vars.push_back({name, b.sort});
      s.bind(b.name, b.sort, Term::var(name, b.sort));
    }
    conclusion = substitute(conclusion->body(), s);
    if (witnesses.empty()) break;
  }
  if (used < witnesses.size())
    throw Error(ErrorCode::WitnessCountMismatch,
                "'" + rule.name + "' introduces " + std::to_string(used) + " objects but " +
                    std::to_string(witnesses.size()) + " names were given");
  for (auto& c : conjuncts(conclusion)) add_hyp(ctx, "", c);
}

}  // namespace

ProofState init_state(const Rule& theorem) {
  ProofState s;
  s.goals.push_back({GoalContext{}, theorem.statement()});
  return s;
}

void tac_intros(ProofState& state) {
  ProofGoal& g = active(state);
  ProofGoal next = g;
  bool progressed = false;
  while (true) {
    const auto& t = next.target;
    if (t->is(Formula::Kind::Forall)) {
      auto taken = used_names(next.context);
      Substitution s;
      for (const auto& b : t->binders()) {
        std::string name = taken.count(b.name) ? fresh_name(b.name, taken) : b.name;
        taken.insert(name);
        next.context.vars.push_back({name, b.sort});
        if (name != b.name) s.bind(b.name, b.sort, Term::var(name, b.sort));
      }
      next.target = substitute(t->body(), s);
    } else if (t->is(Formula::Kind::Implies)) {
      for (auto& c : conjuncts(t->sub(0))) add_hyp(next.context, "", c);
      next.target = t->sub(1);
    } else {
      break;
    }
    progressed = true;
  }
  if (!progressed) throw Error(ErrorCode::NotAUniversal, "the goal is not a universal statement or implication");
  g = std::move(next);
}

void tac_apply(ProofState& state, const TacticNode& node, const EngineServices& services, std::size_t index) {
  ProofGoal& g = active(state);
  Rule rule = services.lookup(node.name);
  std::vector<TermPtr> given;
  for (const auto& a : node.args) given.push_back(in_context(a, g.context));
  if (given.size() > rule.params.size())
    throw Error(ErrorCode::ArityMismatch, "'" + rule.name + "' takes " + std::to_string(rule.params.size()) +
                                              " arguments, " + std::to_string(given.size()) + " given");
  const std::string tactic = "euclid_apply " + rule.name;

  std::vector<TermPtr> chosen;
  Instantiation inst;
  if (given.size() == rule.params.size()) {
    inst = instantiate_rule(rule, given);
    chosen = given;
    if (!inst.premise->is(Formula::Kind::True)) {
      auto v = discharge(state, g.context, inst.premise, services, index, tactic);
      if (!v.unsat())
        throw Error(ErrorCode::PremiseNotEstablished,
                    "premise of '" + rule.name + "' not established (solver: " + std::string(verdict_name(v.kind)) +
                        ")");
    }
  } else {
    // Bounded inference: fill the missing trailing arguments with context
    // variables of the right sort, lexicographically.
    std::vector<std::vector<TermPtr>> pools;
    std::size_t total = 1;
    for (std::size_t i = given.size(); i < rule.params.size(); ++i) {
      const auto& p = rule.params[i];
      if (p.sort == Sort::Real)
        throw Error(ErrorCode::InferenceBoundExceeded,
                    "cannot infer the real argument '" + p.name + "' of '" + rule.name + "'; supply the arguments");
      std::vector<TermPtr> pool;
      for (const auto& v : g.context.vars)
        if (v.sort == p.sort) pool.push_back(Term::var(v.name, v.sort));
      total = pool.empty() ? 0 : (total > services.inference_bound ? total : total * pool.size());
      pools.push_back(std::move(pool));
    }
    if (total > services.inference_bound)
      throw Error(ErrorCode::InferenceBoundExceeded,
                  "too many candidate arguments for '" + rule.name + "' (bound " +
                      std::to_string(services.inference_bound) + "); supply the arguments");
    std::vector<FormulaPtr> known;
    auto unfold = [&](const FormulaPtr& f) { return services.expand ? services.expand(f) : f; };
    for (const auto& h : g.context.hyps) positive_atoms(unfold(h.formula), known);
    std::vector<std::vector<TermPtr>> first, second;
    std::vector<std::size_t> digit(pools.size(), 0);
    for (std::size_t n = 0; n < total; ++n) {
      std::vector<TermPtr> args = given;
      for (std::size_t i = 0; i < pools.size(); ++i) args.push_back(pools[i][digit[i]]);
      for (std::size_t i = pools.size(); i-- > 0;) {
        if (++digit[i] < pools[i].size()) break;
        digit[i] = 0;
      }
      auto cand = instantiate_rule(rule, args);
      auto pv = syntactic_value(cand.premise);
      if (pv && !*pv) continue;
      if (!cand.conclusion->is(Formula::Kind::Exists) && all_known(cand.conclusion, g.context)) continue;
      std::vector<FormulaPtr> needed;
      positive_atoms(unfold(cand.premise), needed);
      bool supported = std::all_of(needed.begin(), needed.end(), [&](const FormulaPtr& a) { return atom_known(a, known); });
      (supported ? first : second).push_back(std::move(args));
    }
    std::size_t tried = 0;
    for (auto* group : {&first, &second}) {
      for (const auto& args : *group) {
        ++tried;
        auto cand = instantiate_rule(rule, args);
        if (cand.premise->is(Formula::Kind::True)) {
          inst = cand;
          chosen = args;
          break;
        }
        std::string rendered;
        for (const auto& a : args) rendered += " " + render(a);
        auto v = discharge(state, g.context, cand.premise, services, index, tactic, true, "inferred:" + rendered);
        if (v.unsat()) {
          inst = cand;
          chosen = args;
          state.trace.back().inferred = true;
          break;
        }
      }
      if (!chosen.empty()) break;
    }
    if (chosen.empty())
      throw Error(ErrorCode::PremiseNotEstablished,
                  "no argument list for '" + rule.name + "' establishes its premise (" + std::to_string(tried) +
                      " candidates tried)");
  }
  ProofGoal next = g;
  introduce_conclusion(next.context, rule, inst.conclusion, node.witnesses);
  g = std::move(next);
}

void tac_finish(ProofState& state, const EngineServices& services, std::size_t index) {
  ProofGoal& g = active(state);
  auto v = discharge(state, g.context, g.target, services, index, "euclid_finish");
  if (!v.unsat())
    throw Error(ErrorCode::GoalNotClosed,
                "goal not closed (solver: " + std::string(verdict_name(v.kind)) + "): " + render(g.target));
  state.goals.pop_back();
}

void tac_structural(ProofState& state, const TacticNode& node, const EngineServices& services, std::size_t index,
                    const std::function<void(const TacticScript&, std::size_t)>& run) {
  using K = TacticNode::Kind;
  ProofGoal& g = active(state);
  // Runs each branch against the goal on top of the stack; every branch must
  // close its goal.
  auto run_branches = [&](std::size_t count) {
    std::size_t start = index + 1;
    for (std::size_t i = 0; i < count && i < node.branches.size(); ++i) {
      std::size_t before = state.goals.size();
      run(node.branches[i], start);
      if (state.goals.size() + 1 != before)
        throw Error(ErrorCode::ProofIncomplete, "branch " + std::to_string(i + 1) + " of " +
                                                    std::string(tactic_kind_name(node.kind)) + " leaves goals open",
                    node.span);
      start += count_nodes(node.branches[i]);
    }
  };
  switch (node.kind) {
    case K::Assert: {
      auto p = in_context(node.formula, g.context);
      auto v = discharge(state, g.context, p, services, index, "euclid_assert");
      if (!v.unsat())
        throw Error(ErrorCode::GoalNotClosed,
                    "assertion not established (solver: " + std::string(verdict_name(v.kind)) + "): " + render(p));
      add_hyp(state.goals.back().context, "", p);
      return;
    }
    case K::Have: {
      auto p = in_context(node.formula, g.context);
      if (!node.name.empty()) {
        auto* old = g.context.find_hyp(node.name);
        if (old && !old->automatic) throw Error(ErrorCode::NameClash, "hypothesis '" + node.name + "' already exists");
      }
      if (node.branches.empty()) throw Error(ErrorCode::ProofIncomplete, "have without a proof");
      std::size_t depth = state.goals.size();
      state.goals.push_back({g.context, p});
      run(node.branches[0], index + 1);
      if (state.goals.size() != depth) {
        state.goals.resize(depth);
        throw Error(ErrorCode::ProofIncomplete, "the proof of '" + render(p) + "' leaves goals open", node.span);
      }
      add_hyp(state.goals.back().context, node.name, p);
      return;
    }
    case K::ByCases: {
      auto p = in_context(node.formula, g.context);
      ProofGoal yes = g, no = g;
      add_hyp(yes.context, node.name, p);
      add_hyp(no.context, node.name, Formula::mk_not(p));
      state.goals.pop_back();
      state.goals.push_back(std::move(no));
      state.goals.push_back(std::move(yes));
      run_branches(2);
      return;
    }
    case K::ByContra: {
      ProofGoal next = g;
      add_hyp(next.context, node.name, Formula::mk_not(g.target));
      next.target = Formula::bottom();
      g = std::move(next);
      return;
    }
    case K::Use: {
      if (!g.target->is(Formula::Kind::Exists))
        throw Error(ErrorCode::NotAnExistential, "the goal is not existential: " + render(g.target));
      auto t = in_context(node.term, g.context);
      const auto& binders = g.target->binders();
      if (t->sort() != binders[0].sort)
        throw Error(ErrorCode::SortMismatch, "witness has sort " + std::string(sort_name(t->sort())) + ", expected " +
                                                 std::string(sort_name(binders[0].sort)));
      Substitution s;
      s.bind(binders[0].name, binders[0].sort, t);
      std::vector<Binder> rest(binders.begin() + 1, binders.end());
      g.target = substitute(Formula::exists(rest, g.target->body()), s);
      return;
    }
    case K::SplitGoal: {
      auto parts = conjuncts(g.target);
      if (!g.target->is(Formula::Kind::And) || parts.size() < 2)
        throw Error(ErrorCode::NotAConjunction, "the goal is not a conjunction: " + render(g.target));
      ProofGoal base = g;
      state.goals.pop_back();
      for (std::size_t i = parts.size(); i-- > 0;) state.goals.push_back({base.context, parts[i]});
      run_branches(parts.size());
      return;
    }
    case K::CasesHyp: {
      const Hypothesis* h = g.context.find_hyp(node.name);
      if (!h) throw Error(ErrorCode::UnknownSymbol, "no hypothesis named '" + node.name + "'");
      auto parts = disjuncts(h->formula);
      if (!h->formula->is(Formula::Kind::Or) || parts.size() < 2)
        throw Error(ErrorCode::NotADisjunction, "'" + node.name + "' is not a disjunction");
      ProofGoal base = g;
      state.goals.pop_back();
      for (std::size_t i = parts.size(); i-- > 0;) {
        ProofGoal branch = base;
        add_hyp(branch.context, "", parts[i]);
        state.goals.push_back(std::move(branch));
      }
      run_branches(parts.size());
      return;
    }
    default: throw Error(ErrorCode::SyntaxError, "not a structural tactic");
  }
}

CheckReport run_script(const Rule& theorem, const TacticScript& script, const EngineServices& services) {
  CheckReport report;
  report.theorem = theorem.name;
  auto start = std::chrono::steady_clock::now();
  ProofState state = init_state(theorem);

  std::function<void(const TacticScript&, std::size_t)> run = [&](const TacticScript& s, std::size_t first) {
    std::size_t index = first;
    for (const auto& node : s.nodes) {
      try {
        switch (node.kind) {
          case TacticNode::Kind::Intros: tac_intros(state); break;
          case TacticNode::Kind::Apply: tac_apply(state, node, services, index); break;
          case TacticNode::Kind::Finish: tac_finish(state, services, index); break;
          default: tac_structural(state, node, services, index, run); break;
        }
      } catch (const Error& e) {
        if (!report.failed_index) {
          report.failed_index = index;
          if (e.span() || e.code() == ErrorCode::SolverNotFound) throw;
          throw Error(e.code(), e.what(), node.span);
        }
        throw;
      }
      index += count_nodes(TacticScript{{node}});
    }
  };

  try {
    run(script, 0);
    if (!state.complete()) {
      report.failed_index = count_nodes(script);
      throw Error(ErrorCode::ProofIncomplete,
                  std::to_string(state.goals.size()) + " goal(s) left: " + render(state.goals.back().target));
    }
    report.status = CheckReport::Status::Proved;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SolverNotFound) throw;
    Diagnostic d;
    d.code = e.code();
    d.message = e.what();
    if (e.span()) d.span = *e.span();
    report.diagnostic = d;
    bool timeout = !state.trace.empty() && state.trace.back().verdict.kind == SolverVerdict::Kind::Timeout &&
                   (e.code() == ErrorCode::GoalNotClosed || e.code() == ErrorCode::PremiseNotEstablished);
    report.status = timeout ? CheckReport::Status::Timeout : CheckReport::Status::Failed;
  }
  report.trace = std::move(state.trace);
  report.solver_calls = report.trace.size();
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace geocheck
