#include "geocheck/dsl/parser.hpp"
#include "geocheck/harness/harness.hpp"
#include "geocheck/numeric/search.hpp"

namespace geocheck {

std::string_view verdict_name(SanityReport::Verdict v) {
  switch (v) {
    case SanityReport::Verdict::Ok: return "ok";
    case SanityReport::Verdict::Counterexample: return "counterexample";
    case SanityReport::Verdict::Vacuous: return "vacuous";
  }
  return "?";
}

SanityReport sanity_check(const std::string& text, const HarnessConfig& cfg, bool use_solver) {
  Theory th = load_base_theory(cfg);
  if (std::filesystem::is_directory(cfg.data_dir / "library")) th.add_directory(cfg.data_dir / "library");

  std::optional<Rule> rule;
  for (const auto& d : parse_library(text, th.symbols()))
    if (const auto* t = std::get_if<TheoremEntry>(&d.value)) {
      rule = t->rule;
      break;
    }
  if (!rule) throw Error(ErrorCode::SyntaxError, "no theorem statement found");

  SanityReport out;
  out.statement = rule->name;
  out.seed = cfg.seed;

  EvalConfig ec;
  ec.trials = cfg.trials;
  ec.seed = cfg.seed;
  auto found = search_counterexample(*rule, th.definitions(), ec);
  out.trials = found.trials;
  out.satisfied = found.satisfied;
  out.degenerate = found.degenerate;
  out.witness = found.counterexample;

  out.hypotheses = "skipped";
  if (use_solver) {
    GoalContext ctx;
    ctx.vars = rule->params;
    for (const auto& h : conjuncts(rule->premise)) ctx.hyps.push_back({"h" + std::to_string(ctx.hyps.size()), h, true});
    ctx.next_auto = ctx.hyps.size();
    SmtConfig sc;
    sc.solver = cfg.solver;
    sc.dump_dir = cfg.dump_dir;
    SmtSession session(th, sc);
    try {
      auto v = session.entails(ctx, Formula::bottom(), "sanity_" + rule->name);
      out.hypotheses = v.unsat() ? "unsat" : std::string(verdict_name(v.kind));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SolverNotFound) throw;
    }
  }

  if (out.witness)
    out.verdict = SanityReport::Verdict::Counterexample;
  else if (found.vacuous() || out.hypotheses == "unsat")
    out.verdict = SanityReport::Verdict::Vacuous;
  else
    out.verdict = SanityReport::Verdict::Ok;
  return out;
}

SanityReport cmd_sanity(const std::filesystem::path& file, const HarnessConfig& cfg) {
  return sanity_check(read_text(file), cfg);
}

}  // namespace geocheck
