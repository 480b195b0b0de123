#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cctt/driver.hpp"

namespace py = pybind11;
using namespace cctt;

namespace {

Options make_options(long max_steps, int jobs, std::optional<std::string> prelude) {
  Options o;
  o.max_steps = max_steps;
  o.jobs = jobs;
  o.prelude = std::move(prelude);
  return o;
}

Report check_text(const std::string& text, const std::string& file, std::optional<std::string> prelude,
                  long max_steps) {
  Options o = make_options(max_steps, 1, std::nullopt);
  if (!prelude) return check_source(file, text, o);
  Module pm = parse_module(*prelude);
  return check_source(file, text, o, &pm);
}

}  // namespace

PYBIND11_MODULE(cctt, m) {
  m.doc() = "Kernel and batch checker for clocked cubical type theory";

  py::register_exception<CheckError>(m, "CheckError");

  py::enum_<Verdict>(m, "Verdict")
      .value("Pass", Verdict::Pass)
      .value("Fail", Verdict::Fail)
      .value("Skip", Verdict::Skip);

  py::class_<DeclResult>(m, "DeclResult")
      .def_readonly("decl", &DeclResult::decl)
      .def_readonly("verdict", &DeclResult::verdict)
      .def_readonly("detail", &DeclResult::detail)
      .def("__repr__", [](const DeclResult& d) {
        return "<DeclResult " + d.decl + " " + (d.verdict == Verdict::Pass ? "PASS" : d.verdict == Verdict::Fail ? "FAIL" : "SKIP") + ">";
      });

  py::class_<Report>(m, "Report")
      .def_readonly("file", &Report::file)
      .def_readonly("decls", &Report::decls)
      .def_readonly("io_error", &Report::io_error)
      .def_property_readonly("ok", &Report::ok)
      .def("render", &Report::render);

  py::class_<Summary>(m, "Summary")
      .def_readonly("reports", &Summary::reports)
      .def_readonly("passed", &Summary::pass)
      .def_readonly("failed", &Summary::fail)
      .def_readonly("skipped", &Summary::skip)
      .def_property_readonly("exit_code", &Summary::exit_code)
      .def("render", &Summary::render);

  m.def("check_source", &check_text, py::arg("text"), py::arg("file") = "<input>", py::arg("prelude") = py::none(),
        py::arg("max_steps") = 1000000, "Check source text, optionally after a prelude given as source text.");

  m.def(
      "check_file",
      [](const std::string& path, long max_steps) { return check_file(path, make_options(max_steps, 1, std::nullopt)); },
      py::arg("path"), py::arg("max_steps") = 1000000);

  m.def(
      "run_corpus",
      [](const std::string& dir, int jobs, long max_steps) {
        py::gil_scoped_release release;
        return run_corpus(dir, make_options(max_steps, jobs, std::nullopt));
      },
      py::arg("dir"), py::arg("jobs") = 0, py::arg("max_steps") = 1000000,
      "Check every .cctt file below dir; a top-level prelude.cctt is loaded first.");

  m.def(
      "conv",
      [](const std::string& lhs, const std::string& rhs, const std::string& type) {
        Session s;
        return s.conv(lhs, rhs, type);
      },
      py::arg("lhs"), py::arg("rhs"), py::arg("type"), "Decide lhs = rhs : type in the empty context.");

  m.def(
      "infer",
      [](const std::string& expr) {
        Session s;
        return print(s.infer(expr));
      },
      py::arg("expr"), "The inferred type of a closed expression, printed.");

  m.def(
      "reprint", [](const std::string& text) { return print_module(parse_module(text)); }, py::arg("text"),
      "Parse a module and print it back in canonical layout.");
}
