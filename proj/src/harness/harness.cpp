#include "geocheck/harness/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "geocheck/dsl/parser.hpp"
#include "harness/parallel.hpp"

namespace geocheck {

namespace fs = std::filesystem;

std::string_view run_status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Proved: return "proved";
    case RunStatus::Failed: return "failed";
    case RunStatus::Timeout: return "timeout";
    case RunStatus::ParseError: return "parse-error";
    case RunStatus::SolverMissing: return "solver-missing";
    case RunStatus::InputError: return "input-error";
  }
  return "?";
}

int exit_code(RunStatus s) {
  switch (s) {
    case RunStatus::Proved: return 0;
    case RunStatus::InputError: return 1;
    case RunStatus::ParseError: return 2;
    case RunStatus::Failed: return 3;
    case RunStatus::Timeout: return 4;
    case RunStatus::SolverMissing: return 5;
  }
  return 1;
}

std::size_t RunReport::proved() const {
  return static_cast<std::size_t>(
      std::count_if(theorems.begin(), theorems.end(), [](const TheoremOutcome& t) { return t.report.proved(); }));
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Theory load_base_theory(const HarnessConfig& cfg) { return Theory::load(cfg.data_dir / "theory"); }

namespace {

bool is_parse_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::SyntaxError:
    case ErrorCode::SortAnnotationMissing:
    case ErrorCode::UnknownTactic:
    case ErrorCode::UnsupportedSyntax:
    case ErrorCode::UnknownSymbol:
    case ErrorCode::DuplicateName:
    case ErrorCode::CyclicDefinition:
    case ErrorCode::SortMismatch:
    case ErrorCode::ArityMismatch: return true;
    default: return false;
  }
}

RunStatus status_of_load_error(const Error& e) {
  if (e.code() == ErrorCode::Io || e.code() == ErrorCode::AxiomFileMissing) return RunStatus::InputError;
  return is_parse_error(e.code()) ? RunStatus::ParseError : RunStatus::Failed;
}

std::string format_error(const Error& e, const std::string& file, const std::string& text) {
  if (!e.span()) return file + ": error[" + std::string(error_code_name(e.code())) + "]: " + e.what();
  return format_diagnostic(to_diagnostic(e, text), file, text);
}

void collect_applies(const TacticScript& s, std::vector<const TacticNode*>& out) {
  for (const auto& n : s.nodes) {
    if (n.kind == TacticNode::Kind::Apply) out.push_back(&n);
    for (const auto& b : n.branches) collect_applies(b, out);
  }
}

// Status of a run from its theorem outcomes: a missing solver dominates, then
// plain failures, then timeouts.
RunStatus combine(const RunReport& r) {
  if (r.status != RunStatus::Proved) return r.status;
  bool failed = false, timeout = false;
  for (const auto& t : r.theorems) {
    failed |= t.report.status == CheckReport::Status::Failed;
    timeout |= t.report.status == CheckReport::Status::Timeout;
  }
  return failed ? RunStatus::Failed : timeout ? RunStatus::Timeout : RunStatus::Proved;
}

}  // namespace

Checker::Checker(Theory theory, const HarnessConfig& cfg)
    : cfg_(cfg), theory_(std::make_unique<Theory>(std::move(theory))) {
  SmtConfig sc;
  sc.solver = cfg.solver;
  sc.dump_dir = cfg.dump_dir;
  session_ = std::make_unique<SmtSession>(*theory_, sc);
}

EngineServices Checker::services(std::size_t position, const std::string& label) {
  EngineServices s;
  s.lookup = [this, position](const std::string& n) { return theory_->lookup_rule(n, position); };
  s.entails = [this](const GoalContext& c, const FormulaPtr& f, const std::string& l, bool probe) {
    return session_->entails(c, f, l, probe ? std::optional<double>(cfg_.probe_timeout_secs) : std::nullopt);
  };
  s.expand = [this](const FormulaPtr& f) { return theory_->definitions().expand(f); };
  s.label = label;
  s.inference_bound = cfg_.inference_bound;
  return s;
}

std::string Checker::format(const Diagnostic& d, const std::string& file) const {
  auto it = texts_.find(file);
  if (it == texts_.end())
    return file + ": error[" + std::string(error_code_name(d.code)) + "]: " + d.message;
  return format_diagnostic(d, file, it->second);
}

TheoremOutcome Checker::check(std::size_t index) {
  const auto& t = theory_->theorems().at(index);
  TheoremOutcome out;
  out.file = t.file;
  out.line = t.line;
  if (!t.proof) {
    out.report.theorem = t.rule.name;
    out.report.status = CheckReport::Status::Failed;
    Diagnostic d;
    d.code = ErrorCode::ProofIncomplete;
    d.message = "'" + t.rule.name + "' has no proof";
    out.report.diagnostic = d;
    out.message = t.file + ":" + std::to_string(t.line) + ": error[ProofIncomplete]: " + d.message;
    return out;
  }
  std::size_t hits = session_->cache().hits(), misses = session_->cache().misses();
  out.report = run_script(t.rule, *t.proof, services(index, t.rule.name));
  if (cfg_.jobs <= 1) {
    out.report.cache_hits = session_->cache().hits() - hits;
    out.report.cache_misses = session_->cache().misses() - misses;
  }
  if (out.report.diagnostic) out.message = format(*out.report.diagnostic, t.file);
  return out;
}

RunReport Checker::check_all(const std::vector<std::size_t>& indices, bool fail_fast) {
  RunReport r;
  auto start = std::chrono::steady_clock::now();
  std::size_t calls = session_->solver_calls(), hits = session_->cache().hits(), misses = session_->cache().misses();

  // Citations are resolved up front so ordering mistakes surface before any
  // solver time is spent.
  for (std::size_t i : indices) {
    const auto& t = theory_->theorems()[i];
    if (!t.proof) continue;
    std::vector<const TacticNode*> applies;
    collect_applies(*t.proof, applies);
    for (const auto* n : applies) {
      try {
        theory_->lookup_rule(n->name, i);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ForwardReference || !fail_fast) continue;
        Diagnostic d = to_diagnostic(e, texts_.count(t.file) ? texts_.at(t.file) : std::string());
        d.span = n->span;
        r.errors.push_back(format(d, t.file));
        r.status = RunStatus::Failed;
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return r;
      }
    }
  }

  std::vector<std::optional<TheoremOutcome>> results(indices.size());
  std::atomic<bool> solver_missing{false};
  std::mutex err_mutex;
  parallel_for(indices.size(), cfg_.jobs, [&](std::size_t k) {
    if (solver_missing.load()) return false;
    try {
      results[k] = check(indices[k]);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SolverNotFound) throw;
      std::lock_guard lock(err_mutex);
      if (!solver_missing.exchange(true)) r.errors.push_back(std::string("error[SolverNotFound]: ") + e.what());
      return false;
    }
    return true;
  });
  for (auto& o : results)
    if (o) r.theorems.push_back(std::move(*o));

  if (solver_missing) r.status = RunStatus::SolverMissing;
  r.status = combine(r);
  r.solver_calls = session_->solver_calls() - calls;
  r.cache_hits = session_->cache().hits() - hits;
  r.cache_misses = session_->cache().misses() - misses;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

RunReport cmd_check(const fs::path& file, const HarnessConfig& cfg) {
  RunReport r;
  r.command = "check";
  r.target = file.string();
  std::string text;
  try {
    text = read_text(file);
  } catch (const Error& e) {
    r.status = RunStatus::InputError;
    r.errors.push_back(e.what());
    return r;
  }

  std::optional<Checker> checker;
  std::vector<std::size_t> mine;
  std::string current_file = file.string(), current_text = text;
  try {
    Theory base = load_base_theory(cfg);
    std::vector<fs::path> lib_files;
    if (fs::is_directory(cfg.data_dir / "library"))
      for (const auto& e : fs::directory_iterator(cfg.data_dir / "library"))
        if (e.is_regular_file() && e.path().extension() == ".geo") lib_files.push_back(e.path());
    std::sort(lib_files.begin(), lib_files.end());

    // Parse the target against everything it could mention to learn which
    // names it declares.
    Theory probe = base;
    for (const auto& f : lib_files) {
      current_file = f.string();
      current_text = read_text(f);
      probe.add_source(current_text, current_file);
    }
    current_file = file.string();
    current_text = text;
    std::set<std::string> declared;
    for (const auto& d : parse_library(text, probe.symbols())) declared.insert(d.name());

    Theory th = std::move(base);
    std::map<std::string, std::string> texts;
    for (const auto& f : lib_files) {
      current_file = f.string();
      current_text = read_text(f);
      auto decls = parse_library(current_text, th.symbols());
      std::erase_if(decls, [&](const Decl& d) {
        return std::holds_alternative<TheoremEntry>(d.value) && declared.count(d.name());
      });
      th.add_decls(std::move(decls), current_file);
      texts[current_file] = current_text;
    }
    current_file = file.string();
    current_text = text;
    mine = th.add_source(text, current_file);
    checker.emplace(std::move(th), cfg);
    for (auto& [f, t] : texts) checker->add_text(f, std::move(t));
    checker->add_text(file.string(), text);
  } catch (const Error& e) {
    r.status = status_of_load_error(e);
    r.errors.push_back(format_error(e, current_file, current_text));
    return r;
  }

  RunReport run = checker->check_all(mine, false);
  run.command = r.command;
  run.target = r.target;
  return run;
}

RunReport cmd_build_lib(const fs::path& dir, const HarnessConfig& cfg) {
  RunReport r;
  r.command = "build-lib";
  r.target = dir.string();
  if (!fs::is_directory(dir)) {
    r.status = RunStatus::InputError;
    r.errors.push_back("'" + dir.string() + "' is not a directory");
    return r;
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".geo") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  std::optional<Checker> checker;
  std::string current_file, current_text;
  try {
    Theory th = load_base_theory(cfg);
    std::map<std::string, std::string> texts;
    for (const auto& f : files) {
      current_file = f.string();
      current_text = read_text(f);
      th.add_source(current_text, current_file);
      texts[current_file] = current_text;
    }
    checker.emplace(std::move(th), cfg);
    for (auto& [f, t] : texts) checker->add_text(f, std::move(t));
  } catch (const Error& e) {
    r.status = status_of_load_error(e);
    r.errors.push_back(format_error(e, current_file, current_text));
    return r;
  }

  std::vector<std::size_t> all(checker->theory().theorems().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  RunReport run = checker->check_all(all, true);
  run.command = r.command;
  run.target = r.target;
  return run;
}

}  // namespace geocheck
