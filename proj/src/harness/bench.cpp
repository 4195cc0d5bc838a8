#include <algorithm>
#include <chrono>
#include <cmath>
#include <mutex>
#include <regex>
#include <set>

#include "geocheck/dsl/parser.hpp"
#include "geocheck/harness/harness.hpp"
#include "harness/parallel.hpp"
#include "json.hpp"

namespace geocheck {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view section_name(Section s) {
  switch (s) {
    case Section::UG: return "UG";
    case Section::LB: return "LB";
    case Section::SP: return "SP";
    case Section::HSC: return "HSC";
    case Section::OP: return "OP";
    case Section::IMO: return "IMO";
  }
  return "?";
}

std::optional<Section> section_from_name(std::string_view name) {
  for (auto s : all_sections())
    if (section_name(s) == name) return s;
  return std::nullopt;
}

const std::vector<Section>& all_sections() {
  static const std::vector<Section> v = {Section::UG, Section::LB, Section::SP, Section::HSC, Section::OP,
                                         Section::IMO};
  return v;
}

std::map<Section, std::size_t> BenchManifest::section_counts() const {
  std::map<Section, std::size_t> out;
  for (auto s : all_sections()) out[s] = 0;
  for (const auto& p : problems) ++out[p.section];
  return out;
}

const BenchProblem* BenchManifest::find(std::string_view id) const {
  for (const auto& p : problems)
    if (p.id == id) return &p;
  return nullptr;
}

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::InvalidManifest, msg); }

std::optional<Rule> first_theorem(const std::vector<Decl>& decls) {
  for (const auto& d : decls)
    if (const auto* t = std::get_if<TheoremEntry>(&d.value)) return t->rule;
  return std::nullopt;
}

}  // namespace

BenchManifest parse_manifest(const std::string& json_text, const fs::path& base, const SymbolTable& symbols) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    invalid(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) invalid("manifest must be a JSON object");
  if (!j.contains("schema") || j["schema"] != 1) invalid("unsupported manifest schema (expected 1)");
  if (!j.contains("problems") || !j["problems"].is_array()) invalid("manifest has no 'problems' array");

  BenchManifest m;
  std::set<std::string> ids;
  for (const auto& p : j["problems"]) {
    if (!p.is_object() || !p.contains("id") || !p["id"].is_string()) invalid("problem without a string 'id'");
    BenchProblem bp;
    bp.id = p["id"].get<std::string>();
    if (bp.id.empty()) invalid("empty problem id");
    if (!ids.insert(bp.id).second) invalid("duplicate problem id '" + bp.id + "'");
    if (!p.contains("section") || !p["section"].is_string()) invalid("problem '" + bp.id + "' has no section");
    auto sec = section_from_name(p["section"].get<std::string>());
    if (!sec) invalid("problem '" + bp.id + "' has unknown section '" + p["section"].get<std::string>() + "'");
    bp.section = *sec;
    if (!p.contains("statement") || !p["statement"].is_string())
      invalid("problem '" + bp.id + "' has no statement file");
    bp.statement_file = base / p["statement"].get<std::string>();
    bp.reference_proof = p.value("reference_proof", false);
    std::string text;
    try {
      text = read_text(bp.statement_file);
    } catch (const Error& e) {
      invalid("problem '" + bp.id + "': " + e.what());
    }
    try {
      auto rule = first_theorem(parse_library(text, symbols));
      if (!rule) invalid("problem '" + bp.id + "': statement file declares no theorem");
      bp.reference = std::move(*rule);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InvalidManifest) throw;
      invalid("problem '" + bp.id + "': " + format_diagnostic(to_diagnostic(e, text), bp.statement_file.string(), text));
    }
    m.problems.push_back(std::move(bp));
  }
  return m;
}

BenchManifest load_manifest(const fs::path& path, const SymbolTable& symbols) {
  std::string text;
  try {
    text = read_text(path);
  } catch (const Error& e) {
    invalid(e.what());
  }
  return parse_manifest(text, path.parent_path(), symbols);
}

bool statement_consistent(const Rule& submitted, const Rule& reference) {
  return equal(normalize(submitted.statement()), normalize(reference.statement()));
}

AttemptRecord evaluate_attempt(Checker& checker, const BenchProblem& problem, const std::string& text,
                               std::size_t sample_index, const std::string& file) {
  AttemptRecord rec;
  rec.problem_id = problem.id;
  rec.sample_index = sample_index;
  rec.file = file;
  rec.present = true;
  auto start = std::chrono::steady_clock::now();
  auto finish = [&] {
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
  };

  // Step one: the restated theorem must match the problem.
  std::vector<TheoremEntry> theorems;
  try {
    for (auto& d : parse_library(text, checker.theory().symbols())) {
      if (!std::holds_alternative<TheoremEntry>(d.value)) {
        rec.diagnostic = "attempts may only declare theorems ('" + d.name() + "')";
        return finish();
      }
      theorems.push_back(std::get<TheoremEntry>(std::move(d.value)));
    }
  } catch (const Error& e) {
    rec.diagnostic = format_diagnostic(to_diagnostic(e, text), file.empty() ? "<attempt>" : file, text);
    return finish();
  }
  if (theorems.empty()) {
    rec.diagnostic = "attempt declares no theorem";
    return finish();
  }
  if (!statement_consistent(theorems.back().rule, problem.reference)) {
    rec.diagnostic = "restated theorem differs from the problem statement";
    return finish();
  }
  rec.consistent = true;

  // Step two: helpers first, then the main theorem, each seeing the earlier
  // ones and the whole library.
  std::map<std::string, Rule> helpers;
  for (std::size_t i = 0; i < theorems.size(); ++i) {
    const auto& t = theorems[i];
    if (!t.proof) {
      rec.diagnostic = "'" + t.rule.name + "' has no proof";
      return finish();
    }
    if (checker.theory().find_axiom(t.rule.name) || checker.theory().definitions().contains(t.rule.name)) {
      rec.diagnostic = "'" + t.rule.name + "' clashes with an axiom or definition";
      return finish();
    }
    auto services = checker.services(Theory::kEnd, problem.id + "_s" + std::to_string(sample_index) + "_" +
                                                       std::to_string(i));
    services.lookup = [&checker, &helpers](const std::string& n) {
      if (auto it = helpers.find(n); it != helpers.end()) return it->second;
      return checker.theory().lookup_rule(n, Theory::kEnd);
    };
    auto report = run_script(t.rule, *t.proof, services);
    rec.solver_calls += report.solver_calls;
    if (!report.proved()) {
      std::string why = report.diagnostic ? report.diagnostic->message : std::string(status_name(report.status));
      if (report.diagnostic && report.failed_index) {
        auto [line, col] = line_col(text, report.diagnostic->span.offset);
        why = (file.empty() ? "<attempt>" : file) + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
              why;
      }
      rec.diagnostic = why;
      return finish();
    }
    helpers[t.rule.name] = t.rule;
  }
  rec.verified = true;
  return finish();
}

double percent2(std::size_t num, std::size_t den) {
  if (den == 0) return 0;
  // Integer arithmetic keeps 21/122 at exactly 17.21.
  std::uint64_t scaled = (static_cast<std::uint64_t>(num) * 20000 + den) / (2 * den);
  return static_cast<double>(scaled) / 100.0;
}

PassAtK pass_at_k(const BenchManifest& manifest, const std::vector<AttemptRecord>& records, std::size_t k) {
  if (k == 0) throw Error(ErrorCode::InsufficientSamples, "k must be positive");
  std::map<std::string, std::vector<const AttemptRecord*>> by;
  for (const auto& r : records) by[r.problem_id].push_back(&r);
  std::vector<std::string> deficient;
  for (const auto& p : manifest.problems)
    if (by[p.id].size() < k) deficient.push_back(p.id + " (" + std::to_string(by[p.id].size()) + ")");
  if (!deficient.empty()) {
    std::string msg = "pass@" + std::to_string(k) + " needs " + std::to_string(k) + " samples per problem; short:";
    for (const auto& d : deficient) msg += " " + d;
    throw Error(ErrorCode::InsufficientSamples, msg);
  }
  PassAtK out;
  out.k = k;
  out.total = manifest.size();
  for (auto s : all_sections()) out.solved_by_section[s] = 0;
  for (const auto& p : manifest.problems) {
    auto rs = by[p.id];
    std::sort(rs.begin(), rs.end(), [](auto* a, auto* b) { return a->sample_index < b->sample_index; });
    bool solved = std::any_of(rs.begin(), rs.begin() + static_cast<std::ptrdiff_t>(k),
                              [](const AttemptRecord* r) { return r->verified; });
    if (solved) {
      ++out.solved;
      ++out.solved_by_section[p.section];
    }
  }
  out.rate = percent2(out.solved, out.total);
  return out;
}

EvalReport cmd_bench(const fs::path& manifest_path, const fs::path& attempts_dir, const std::vector<std::size_t>& ks,
                     const HarnessConfig& cfg) {
  EvalReport report;
  auto start = std::chrono::steady_clock::now();
  auto done = [&] {
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  };

  std::optional<Checker> checker;
  BenchManifest manifest;
  try {
    Theory th = load_base_theory(cfg);
    if (fs::is_directory(cfg.data_dir / "library")) th.add_directory(cfg.data_dir / "library");
    manifest = load_manifest(manifest_path, th.symbols());
    checker.emplace(std::move(th), cfg);
  } catch (const Error& e) {
    report.status = e.code() == ErrorCode::InvalidManifest ? RunStatus::ParseError : RunStatus::InputError;
    report.errors.push_back(std::string("error[") + std::string(error_code_name(e.code())) + "]: " + e.what());
    return done();
  }
  report.problems = manifest.problems;

  if (!fs::is_directory(attempts_dir)) {
    report.status = RunStatus::InputError;
    report.errors.push_back("'" + attempts_dir.string() + "' is not a directory");
    return done();
  }

  // Attempt files, grouped by problem and ordered by sample index.
  static const std::regex name_re(R"(^(.+)\.(\d+)\.geo$)");
  std::map<std::string, std::map<std::size_t, fs::path>> found;
  for (const auto& e : fs::directory_iterator(attempts_dir)) {
    if (!e.is_regular_file()) continue;
    std::smatch m;
    std::string fname = e.path().filename().string();
    if (!std::regex_match(fname, m, name_re)) continue;
    if (!manifest.find(m[1].str())) {
      report.errors.push_back("warning: '" + fname + "' matches no problem");
      continue;
    }
    found[m[1].str()][std::stoul(m[2].str())] = e.path();
  }
  for (const auto& [id, files] : found) report.samples = std::max(report.samples, files.size());

  struct Job {
    const BenchProblem* problem;
    std::size_t index;
    fs::path file;
  };
  std::vector<Job> jobs;
  for (const auto& p : manifest.problems) {
    std::size_t last = 0;
    for (const auto& [idx, path] : found[p.id]) {
      jobs.push_back({&p, idx, path});
      last = idx;
    }
    for (std::size_t n = found[p.id].size(); n < report.samples; ++n) {
      AttemptRecord missing;
      missing.problem_id = p.id;
      missing.sample_index = ++last;
      missing.diagnostic = "no attempt";
      report.records.push_back(missing);
    }
  }

  std::vector<AttemptRecord> evaluated(jobs.size());
  std::size_t calls = checker->session().solver_calls();
  try {
    parallel_for(jobs.size(), cfg.jobs, [&](std::size_t i) {
      const auto& j = jobs[i];
      std::string text;
      try {
        text = read_text(j.file);
      } catch (const Error& e) {
        evaluated[i].problem_id = j.problem->id;
        evaluated[i].sample_index = j.index;
        evaluated[i].file = j.file.string();
        evaluated[i].diagnostic = e.what();
        return true;
      }
      evaluated[i] = evaluate_attempt(*checker, *j.problem, text, j.index, j.file.string());
      return true;
    });
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SolverNotFound) throw;
    report.status = RunStatus::SolverMissing;
    report.errors.push_back(std::string("error[SolverNotFound]: ") + e.what());
    return done();
  }
  report.solver_calls = checker->session().solver_calls() - calls;
  for (auto& r : evaluated) report.records.push_back(std::move(r));
  std::sort(report.records.begin(), report.records.end(), [&](const AttemptRecord& a, const AttemptRecord& b) {
    return std::pair(a.problem_id, a.sample_index) < std::pair(b.problem_id, b.sample_index);
  });

  for (std::size_t k : ks) {
    try {
      report.pass.push_back(pass_at_k(manifest, report.records, k));
    } catch (const Error& e) {
      report.errors.push_back(std::string("error[InsufficientSamples]: ") + e.what());
      report.status = RunStatus::InputError;
    }
  }
  return done();
}

}  // namespace geocheck
