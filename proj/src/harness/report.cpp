#include "geocheck/harness/report.hpp"

#include <cstdio>
#include <sstream>

#include "geocheck/numeric/search.hpp"
#include "json.hpp"

namespace geocheck {

using ordered = nlohmann::ordered_json;

std::optional<OutputFormat> output_format_from_name(std::string_view name) {
  if (name == "human") return OutputFormat::Human;
  if (name == "json") return OutputFormat::Json;
  if (name == "markdown") return OutputFormat::Markdown;
  return std::nullopt;
}

namespace {

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

double round3(double s) { return static_cast<double>(static_cast<long long>(s * 1000 + 0.5)) / 1000.0; }

ordered witness(const Assignment& a) {
  ordered w;
  w["points"] = ordered::object();
  w["lines"] = ordered::object();
  w["circles"] = ordered::object();
  w["reals"] = ordered::object();
  for (const auto& [n, p] : a.points()) w["points"][n] = {p.x, p.y};
  for (const auto& [n, l] : a.lines()) w["lines"][n] = {l.a, l.b, l.c};
  for (const auto& [n, c] : a.circles()) w["circles"][n] = {c.cx, c.cy, c.r};
  for (const auto& [n, v] : a.reals()) w["reals"][n] = v;
  return w;
}

std::size_t count_obligations(const CheckReport& r, bool probes) {
  std::size_t n = 0;
  for (const auto& t : r.trace) n += t.probe == probes;
  return n;
}

}  // namespace

std::string witness_json(const Assignment& a) { return witness(a).dump(); }

std::string render_report(const RunReport& r, OutputFormat fmt) {
  std::ostringstream os;
  switch (fmt) {
    case OutputFormat::Json: {
      ordered j;
      j["schema"] = 1;
      j["command"] = r.command;
      j["target"] = r.target;
      j["status"] = run_status_name(r.status);
      j["theorems"] = ordered::array();
      for (const auto& t : r.theorems) {
        ordered e;
        e["name"] = t.report.theorem;
        e["file"] = t.file;
        e["line"] = t.line;
        e["status"] = status_name(t.report.status);
        e["obligations"] = count_obligations(t.report, false);
        e["probes"] = count_obligations(t.report, true);
        e["solver_calls"] = t.report.solver_calls;
        e["cache_hits"] = t.report.cache_hits;
        e["cache_misses"] = t.report.cache_misses;
        e["seconds"] = round3(t.report.seconds);
        if (t.report.failed_index) e["failed_tactic"] = *t.report.failed_index;
        if (!t.message.empty()) e["message"] = t.message;
        e["trace"] = ordered::array();
        for (const auto& x : t.report.trace) {
          ordered te;
          te["tactic_index"] = x.tactic_index;
          te["tactic"] = x.tactic;
          te["obligation"] = x.obligation;
          te["verdict"] = verdict_name(x.verdict.kind);
          te["probe"] = x.probe;
          te["seconds"] = round3(x.verdict.seconds);
          e["trace"].push_back(te);
        }
        j["theorems"].push_back(e);
      }
      j["errors"] = r.errors;
      j["totals"] = {{"theorems", r.theorems.size()},
                     {"proved", r.proved()},
                     {"solver_calls", r.solver_calls},
                     {"cache_hits", r.cache_hits},
                     {"cache_misses", r.cache_misses},
                     {"seconds", round3(r.seconds)}};
      os << j.dump(2) << "\n";
      break;
    }
    case OutputFormat::Markdown: {
      os << "| theorem | status | obligations | time |\n|---|---|---|---|\n";
      for (const auto& t : r.theorems)
        os << "| " << t.report.theorem << " | " << status_name(t.report.status) << " | "
           << count_obligations(t.report, false) << " | " << secs(t.report.seconds) << " |\n";
      os << "\n" << r.proved() << "/" << r.theorems.size() << " proved, status " << run_status_name(r.status) << "\n";
      for (const auto& e : r.errors) os << "\n" << e << "\n";
      break;
    }
    case OutputFormat::Human: {
      for (const auto& e : r.errors) os << e << "\n";
      for (const auto& t : r.theorems) {
        os << t.report.theorem << ": " << status_name(t.report.status) << " (" << count_obligations(t.report, false)
           << " obligations";
        if (auto p = count_obligations(t.report, true)) os << ", " << p << " probes";
        os << ", " << secs(t.report.seconds) << ")\n";
        if (!t.message.empty()) os << "  " << t.message << "\n";
      }
      os << r.command << ": " << r.proved() << "/" << r.theorems.size() << " proved, " << r.solver_calls
         << " solver calls, cache " << r.cache_hits << " hits / " << r.cache_misses << " misses, "
         << secs(r.seconds) << " [" << run_status_name(r.status) << "]\n";
      break;
    }
  }
  return os.str();
}

std::string render_report(const EvalReport& r, OutputFormat fmt) {
  std::map<std::string, const BenchProblem*> problems;
  for (const auto& p : r.problems) problems[p.id] = &p;
  std::ostringstream os;
  switch (fmt) {
    case OutputFormat::Json: {
      ordered j;
      j["schema"] = 1;
      j["status"] = run_status_name(r.status);
      j["samples"] = r.samples;
      j["records"] = ordered::array();
      for (const auto& a : r.records) {
        ordered e;
        e["id"] = a.problem_id;
        if (auto it = problems.find(a.problem_id); it != problems.end())
          e["section"] = section_name(it->second->section);
        e["sample"] = a.sample_index;
        e["present"] = a.present;
        e["consistent"] = a.consistent;
        e["verified"] = a.verified;
        e["solver_calls"] = a.solver_calls;
        e["seconds"] = round3(a.seconds);
        if (!a.diagnostic.empty()) e["diagnostic"] = a.diagnostic;
        j["records"].push_back(e);
      }
      ordered agg;
      agg["problems"] = r.problems.size();
      ordered sizes = ordered::object();
      std::map<Section, std::size_t> count;
      for (const auto& p : r.problems) ++count[p.section];
      for (auto s : all_sections()) sizes[std::string(section_name(s))] = count[s];
      agg["sections"] = sizes;
      agg["pass_at_k"] = ordered::array();
      for (const auto& p : r.pass) {
        ordered e;
        e["k"] = p.k;
        e["solved"] = p.solved;
        e["total"] = p.total;
        e["rate"] = p.rate;
        ordered by = ordered::object();
        for (auto s : all_sections()) by[std::string(section_name(s))] = p.solved_by_section.at(s);
        e["solved_by_section"] = by;
        agg["pass_at_k"].push_back(e);
      }
      agg["solver_calls"] = r.solver_calls;
      agg["seconds"] = round3(r.seconds);
      j["aggregate"] = agg;
      j["errors"] = r.errors;
      os << j.dump(2) << "\n";
      break;
    }
    case OutputFormat::Markdown: {
      os << "| id | section | consistent | verified | time |\n|---|---|---|---|---|\n";
      for (const auto& a : r.records) {
        auto it = problems.find(a.problem_id);
        os << "| " << a.problem_id << "." << a.sample_index << " | "
           << (it == problems.end() ? "?" : section_name(it->second->section)) << " | "
           << (a.consistent ? "yes" : "no") << " | " << (a.verified ? "yes" : "no") << " | "
           << (a.present ? secs(a.seconds) : "-") << " |\n";
      }
      if (!r.pass.empty()) {
        os << "\n| k | solved | rate (%) |";
        for (auto s : all_sections()) os << " " << section_name(s) << " |";
        os << "\n|---|---|---|";
        for (std::size_t i = 0; i < all_sections().size(); ++i) os << "---|";
        os << "\n";
        for (const auto& p : r.pass) {
          char rate[32];
          std::snprintf(rate, sizeof rate, "%.2f", p.rate);
          os << "| " << p.k << " | " << p.solved << "/" << p.total << " | " << rate << " |";
          for (auto s : all_sections()) os << " " << p.solved_by_section.at(s) << " |";
          os << "\n";
        }
      }
      for (const auto& e : r.errors) os << "\n" << e << "\n";
      break;
    }
    case OutputFormat::Human: {
      for (const auto& e : r.errors) os << e << "\n";
      for (const auto& a : r.records) {
        if (!a.present) continue;
        os << a.problem_id << "." << a.sample_index << ": "
           << (a.verified ? "verified" : a.consistent ? "not verified" : "inconsistent");
        if (!a.diagnostic.empty()) os << " (" << a.diagnostic << ")";
        os << "\n";
      }
      for (const auto& p : r.pass) {
        char rate[32];
        std::snprintf(rate, sizeof rate, "%.2f", p.rate);
        os << "pass@" << p.k << ": " << p.solved << "/" << p.total << " = " << rate << "%\n";
      }
      os << r.problems.size() << " problems, " << r.samples << " samples each, " << r.solver_calls
         << " solver calls, " << secs(r.seconds) << "\n";
      break;
    }
  }
  return os.str();
}

std::string render_report(const SanityReport& r, OutputFormat fmt) {
  if (fmt == OutputFormat::Json) {
    ordered j;
    j["statement"] = r.statement;
    j["verdict"] = verdict_name(r.verdict);
    if (r.witness) j["witness"] = witness(*r.witness);
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["satisfied"] = r.satisfied;
    j["degenerate"] = r.degenerate;
    j["hypotheses"] = r.hypotheses;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  if (fmt == OutputFormat::Markdown) {
    os << "| statement | verdict | trials | satisfied | hypotheses |\n|---|---|---|---|---|\n| " << r.statement
       << " | " << verdict_name(r.verdict) << " | " << r.trials << " | " << r.satisfied << " | " << r.hypotheses
       << " |\n";
    return os.str();
  }
  os << r.statement << ": " << verdict_name(r.verdict) << " after " << r.trials << " trials (" << r.satisfied
     << " satisfied the hypotheses, " << r.degenerate << " degenerate; seed " << r.seed
     << "; solver on hypotheses: " << r.hypotheses << ")\n";
  if (r.witness) os << "counterexample:\n" << describe(*r.witness);
  return os.str();
}

}  // namespace geocheck
