#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qreflect/rational.hpp"
#include "qreflect/rep.hpp"
#include "qreflect/suite.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_qreflect, m) {
  m.doc() = "exact verification of diagonal boundary operators";

  m.def(
      "verify_args",
      [](const std::vector<std::string>& args) {
        qreflect::RunConfig cfg = qreflect::parse_verify_args(args);
        qreflect::SuiteResult result;
        std::string report;
        {
          py::gil_scoped_release release;
          result = qreflect::run_suite(cfg);
          report = qreflect::emit_report(cfg, result.checks, "json");
        }
        return py::make_tuple(result.exit_code, report);
      },
      py::arg("args"),
      "Run the verification suite for a list of CLI-style flags; returns "
      "(exit_code, json_report).");

  m.def(
      "predicted_job_count",
      [](const std::vector<std::string>& args) {
        return qreflect::predicted_job_count(qreflect::parse_verify_args(args));
      },
      py::arg("args"), "Number of check jobs the given flags would schedule.");

  m.def("suite_names", &qreflect::suite_names);

  m.def(
      "dump_matrix",
      [](const std::string& what, int N, long m, int a, int i, int j, const std::string& q,
         const std::string& x) {
        using namespace qreflect;
        Scalar qs = Scalar::exact(parse_rational(q));
        Scalar xs = Scalar::exact(parse_rational(x));
        Rep rep = oscillator_rep(N, m, qs);
        Matrix out;
        if (what == "gen")
          out = rep.gen(i, j);
        else if (what == "genbar")
          out = rep.genbar(i, j);
        else if (what == "Khatrat")
          out = rational_k_operator(classical_rep(N, m), a, N, xs, qs);
        else
          throw config_error("unknown dump target '" + what + "'");
        std::vector<std::vector<std::string>> rows(static_cast<size_t>(out.dim()));
        for (int r = 0; r < out.dim(); ++r)
          for (int c = 0; c < out.dim(); ++c) rows[static_cast<size_t>(r)].push_back(out.at(r, c).str());
        return rows;
      },
      py::arg("what"), py::arg("N"), py::arg("m"), py::arg("a") = 1, py::arg("i") = 1,
      py::arg("j") = 2, py::arg("q") = "3/2", py::arg("x") = "2/5",
      "One operator matrix as exact rational strings.");

  m.def("q_gamma", &qreflect::q_gamma, py::arg("x"), py::arg("q"), py::arg("terms") = 0,
        "q-deformed gamma value; terms = 0 selects adaptive truncation.");
}
