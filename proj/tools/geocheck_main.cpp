#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "geocheck/harness/harness.hpp"
#include "geocheck/harness/report.hpp"

using namespace geocheck;

namespace {

std::vector<std::size_t> parse_ks(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t k = std::stoul(part);
    if (k == 0) throw std::invalid_argument("k must be positive");
    out.push_back(k);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batch proof checker for Euclidean geometry"};
  app.require_subcommand(1);

  HarnessConfig cfg;
  std::string format = "human";
  std::string dump_dir, data_dir, solver_args;
  app.add_option("--solver-path", cfg.solver.path, "SMT solver executable (default: $GEOCHECK_SOLVER, cvc5, z3)");
  app.add_option("--solver-args", solver_args,
                 "Solver arguments, space separated (use --solver-args=\"...\"); replaces the defaults");
  app.add_option("--timeout-secs", cfg.solver.timeout_secs, "Per-obligation solver timeout")
      ->check(CLI::PositiveNumber);
  app.add_option("--probe-timeout-secs", cfg.probe_timeout_secs, "Timeout for argument-inference probes")
      ->check(CLI::PositiveNumber);
  app.add_option("--jobs", cfg.jobs, "Concurrent theorems or attempts")->check(CLI::PositiveNumber);
  app.add_option("--dump-queries", dump_dir, "Write every query to DIR as NNNN_<label>.smt2");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"human", "json", "markdown"}));
  app.add_option("--seed", cfg.seed, "Seed for numeric sampling");
  app.add_option("--trials", cfg.trials, "Numeric samples for sanity")->check(CLI::PositiveNumber);
  app.add_option("--data-dir", data_dir, "Directory holding theory/ and library/");

  std::string check_file;
  auto* check = app.add_subcommand("check", "Check every theorem of a file");
  check->add_option("FILE", check_file)->required();

  std::string lib_dir;
  auto* build = app.add_subcommand("build-lib", "Check a library directory in file order");
  build->add_option("DIR", lib_dir)->required();

  std::string manifest, attempts, ks_text = "1,2,4";
  auto* bench = app.add_subcommand("bench", "Evaluate recorded proof attempts");
  bench->add_option("--manifest", manifest)->required();
  bench->add_option("--attempts", attempts)->required();
  bench->add_option("--k", ks_text, "Comma-separated sample budgets");

  std::string sanity_file;
  auto* sanity = app.add_subcommand("sanity", "Look for counterexamples and vacuous hypotheses");
  sanity->add_option("FILE", sanity_file)->required();

  CLI11_PARSE(app, argc, argv);

  if (!dump_dir.empty()) cfg.dump_dir = dump_dir;
  std::istringstream words(solver_args);
  for (std::string w; words >> w;) cfg.solver.args.push_back(w);
  if (!data_dir.empty()) cfg.data_dir = data_dir;
  auto fmt = *output_format_from_name(format);

  try {
    if (*check) {
      auto r = cmd_check(check_file, cfg);
      std::cout << render_report(r, fmt);
      return exit_code(r.status);
    }
    if (*build) {
      auto r = cmd_build_lib(lib_dir, cfg);
      std::cout << render_report(r, fmt);
      return exit_code(r.status);
    }
    if (*bench) {
      std::vector<std::size_t> ks;
      try {
        ks = parse_ks(ks_text);
      } catch (const std::exception&) {
        std::cerr << "--k expects positive integers separated by commas\n";
        return 1;
      }
      auto r = cmd_bench(manifest, attempts, ks, cfg);
      std::cout << render_report(r, fmt);
      return exit_code(r.status);
    }
    if (*sanity) {
      auto r = cmd_sanity(sanity_file, cfg);
      std::cout << render_report(r, fmt);
      return r.verdict == SanityReport::Verdict::Ok ? 0 : 3;
    }
  } catch (const Error& e) {
    std::cerr << "error[" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::SolverNotFound: return 5;
      case ErrorCode::Io:
      case ErrorCode::AxiomFileMissing: return 1;
      default: return 2;
    }
  }
  return 1;
}
