#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "darwin/cli.hpp"

namespace py = pybind11;
using namespace darwin;

namespace {

Regime parse_regime(const std::string& s) {
  if (s == "max") return Regime::MaxKoenig;
  if (s == "min") return Regime::MinStrong;
  throw ValidationError("regime must be 'max' or 'min'");
}

py::dict run(const std::string& config_json, bool with_state) {
  const ExperimentConfig c = parse_config(nlohmann::json::parse(config_json));
  const RunResult r = run_experiment(c);
  py::dict out;
  out["summary"] = summary_json(c, r).dump();
  out["pip_csv"] = pip_csv(r.pip);
  if (with_state) out["state"] = r.state;
  return out;
}

}  // namespace

PYBIND11_MODULE(_qdarwin, m) {
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.attr("artifact_version") = kArtifactVersion;
  m.def("run", &run, py::arg("config_json"), py::arg("with_state") = false);
  m.def("config_hash", [](const std::string& j) { return config_hash(parse_config(nlohmann::json::parse(j))); });
  m.def("canonical_config", [](const std::string& j) { return to_json(parse_config(nlohmann::json::parse(j))).dump(); });
  m.def("dimension_formula", [](int k, int n, const std::string& regime) {
    return dimension_formula(k, n, parse_regime(regime));
  });
  m.def(
      "dims",
      [](int k, int n, const std::string& regime, int max_numeric) {
        const DimsReport r = dims_report(k, n, parse_regime(regime), max_numeric);
        py::dict out;
        out["formula"] = r.formula;
        out["numeric"] = r.numeric ? py::cast(*r.numeric) : py::none();
        out["match"] = r.match();
        out["note"] = r.note;
        return out;
      },
      py::arg("k"), py::arg("n"), py::arg("regime") = "max", py::arg("max_numeric") = 5);
}
