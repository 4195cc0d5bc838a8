#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "geocheck/dsl/parser.hpp"
#include "geocheck/dsl/printer.hpp"
#include "geocheck/harness/harness.hpp"
#include "geocheck/harness/report.hpp"
#include "geocheck/numeric/model.hpp"

namespace py = pybind11;
using namespace geocheck;

namespace {

SymbolTable theory_symbols(const HarnessConfig& cfg) {
  Theory th = load_base_theory(cfg);
  return th.symbols();
}

Assignment make_assignment(const std::map<std::string, std::pair<double, double>>& points,
                           const std::map<std::string, std::tuple<double, double, double>>& lines,
                           const std::map<std::string, std::tuple<double, double, double>>& circles,
                           const std::map<std::string, double>& reals) {
  Assignment a;
  for (const auto& [n, p] : points) a.set_point(n, {p.first, p.second});
  for (const auto& [n, l] : lines) a.set_line(n, {std::get<0>(l), std::get<1>(l), std::get<2>(l)});
  for (const auto& [n, c] : circles) a.set_circle(n, {std::get<0>(c), std::get<1>(c), std::get<2>(c)});
  for (const auto& [n, v] : reals) a.set_real(n, v);
  return a;
}

}  // namespace

PYBIND11_MODULE(_geocheck, m) {
  m.doc() = "Euclidean geometry proof checking";

  static py::exception<Error> exc(m, "GeocheckError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = exc;
      py::object inst = err(std::string(error_code_name(e.code())) + ": " + e.what());
      inst.attr("code") = std::string(error_code_name(e.code()));
      PyErr_SetObject(exc.ptr(), inst.ptr());
    }
  });

  py::class_<HarnessConfig>(m, "Config")
      .def(py::init<>())
      .def_property(
          "solver_path", [](const HarnessConfig& c) { return c.solver.path; },
          [](HarnessConfig& c, const std::string& p) { c.solver.path = p; })
      .def_property(
          "timeout_secs", [](const HarnessConfig& c) { return c.solver.timeout_secs; },
          [](HarnessConfig& c, double t) { c.solver.timeout_secs = t; })
      .def_readwrite("probe_timeout_secs", &HarnessConfig::probe_timeout_secs)
      .def_readwrite("jobs", &HarnessConfig::jobs)
      .def_readwrite("dump_dir", &HarnessConfig::dump_dir)
      .def_readwrite("seed", &HarnessConfig::seed)
      .def_readwrite("trials", &HarnessConfig::trials)
      .def_readwrite("data_dir", &HarnessConfig::data_dir);

  py::class_<Rule>(m, "Rule")
      .def_readonly("name", &Rule::name)
      .def_property_readonly("params",
                             [](const Rule& r) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const auto& b : r.params) out.emplace_back(b.name, std::string(sort_name(b.sort)));
                               return out;
                             })
      .def_property_readonly("premise", [](const Rule& r) { return render(r.premise); })
      .def_property_readonly("conclusion", [](const Rule& r) { return render(r.conclusion); })
      .def("render", [](const Rule& r) { return render(r); })
      .def("__repr__", [](const Rule& r) { return "<Rule " + r.name + ">"; });

  m.def(
      "parse_statement",
      [](const std::string& text, const HarnessConfig& cfg) { return parse_statement(text, theory_symbols(cfg)); },
      py::arg("text"), py::arg("config") = HarnessConfig{}, "Parse a `theorem NAME : ...` header.");
  m.def(
      "normalize_formula",
      [](const std::string& text, const HarnessConfig& cfg) {
        return render(normalize(parse_formula(text, {}, theory_symbols(cfg))));
      },
      py::arg("text"), py::arg("config") = HarnessConfig{});
  m.def(
      "statement_consistent",
      [](const std::string& submitted, const std::string& reference, const HarnessConfig& cfg) {
        auto syms = theory_symbols(cfg);
        return statement_consistent(parse_statement(submitted, syms), parse_statement(reference, syms));
      },
      py::arg("submitted"), py::arg("reference"), py::arg("config") = HarnessConfig{});

  m.def(
      "check", [](const std::filesystem::path& p, const HarnessConfig& cfg) {
        py::gil_scoped_release release;
        return render_report(cmd_check(p, cfg), OutputFormat::Json);
      },
      py::arg("path"), py::arg("config") = HarnessConfig{}, "JSON report for every theorem of a file.");
  m.def(
      "build_lib", [](const std::filesystem::path& p, const HarnessConfig& cfg) {
        py::gil_scoped_release release;
        return render_report(cmd_build_lib(p, cfg), OutputFormat::Json);
      },
      py::arg("dir"), py::arg("config") = HarnessConfig{});
  m.def(
      "bench",
      [](const std::filesystem::path& manifest, const std::filesystem::path& attempts, std::vector<std::size_t> ks,
         const HarnessConfig& cfg) {
        py::gil_scoped_release release;
        return render_report(cmd_bench(manifest, attempts, ks, cfg), OutputFormat::Json);
      },
      py::arg("manifest"), py::arg("attempts"), py::arg("ks") = std::vector<std::size_t>{1, 2, 4},
      py::arg("config") = HarnessConfig{});
  m.def(
      "sanity",
      [](const std::string& text, const HarnessConfig& cfg, bool use_solver) {
        py::gil_scoped_release release;
        return render_report(sanity_check(text, cfg, use_solver), OutputFormat::Json);
      },
      py::arg("text"), py::arg("config") = HarnessConfig{}, py::arg("use_solver") = true);
  m.def("exit_code", [](const std::string& status) {
    for (auto s : {RunStatus::Proved, RunStatus::Failed, RunStatus::Timeout, RunStatus::ParseError,
                   RunStatus::SolverMissing, RunStatus::InputError})
      if (run_status_name(s) == status) return exit_code(s);
    throw py::value_error("unknown status '" + status + "'");
  });

  m.def(
      "pass_at_k",
      [](const std::vector<std::pair<std::string, std::string>>& problems,
         const std::vector<std::tuple<std::string, std::size_t, bool>>& records, std::size_t k) {
        BenchManifest man;
        for (const auto& [id, sec] : problems) {
          BenchProblem p;
          p.id = id;
          auto s = section_from_name(sec);
          if (!s) throw py::value_error("unknown section '" + sec + "'");
          p.section = *s;
          man.problems.push_back(p);
        }
        std::vector<AttemptRecord> recs;
        for (const auto& [id, idx, ok] : records) {
          AttemptRecord r;
          r.problem_id = id;
          r.sample_index = idx;
          r.present = true;
          r.consistent = ok;
          r.verified = ok;
          recs.push_back(r);
        }
        auto p = pass_at_k(man, recs, k);
        std::map<std::string, std::size_t> by;
        for (const auto& [s, n] : p.solved_by_section) by[std::string(section_name(s))] = n;
        return py::dict(py::arg("k") = p.k, py::arg("solved") = p.solved, py::arg("total") = p.total,
                        py::arg("rate") = p.rate, py::arg("solved_by_section") = by);
      },
      py::arg("problems"), py::arg("records"), py::arg("k"),
      "problems: [(id, section)], records: [(id, sample_index, verified)].");

  m.def(
      "evaluate",
      [](const std::string& formula, const std::map<std::string, std::pair<double, double>>& points,
         const std::map<std::string, std::tuple<double, double, double>>& lines,
         const std::map<std::string, std::tuple<double, double, double>>& circles,
         const std::map<std::string, double>& reals, const HarnessConfig& cfg) {
        Theory th = load_base_theory(cfg);
        Scope scope;
        for (const auto& [n, _] : points) scope[n] = Sort::Point;
        for (const auto& [n, _] : lines) scope[n] = Sort::Line;
        for (const auto& [n, _] : circles) scope[n] = Sort::Circle;
        for (const auto& [n, _] : reals) scope[n] = Sort::Real;
        auto f = th.definitions().expand(parse_formula(formula, scope, th.symbols()));
        return eval_formula(make_assignment(points, lines, circles, reals), f);
      },
      py::arg("formula"), py::arg("points") = std::map<std::string, std::pair<double, double>>{},
      py::arg("lines") = std::map<std::string, std::tuple<double, double, double>>{},
      py::arg("circles") = std::map<std::string, std::tuple<double, double, double>>{},
      py::arg("reals") = std::map<std::string, double>{}, py::arg("config") = HarnessConfig{},
      "Truth of a formula under coordinates. Lines are (a, b, c) with ax + by + c = 0, circles (cx, cy, r).");
  m.def(
      "evaluate_term",
      [](const std::string& term, const std::map<std::string, std::pair<double, double>>& points) {
        Scope scope;
        for (const auto& [n, _] : points) scope[n] = Sort::Point;
        return eval_term(make_assignment(points, {}, {}, {}), parse_term(term, scope));
      },
      py::arg("term"), py::arg("points"));

  m.attr("__version__") = "0.1.0";
}
