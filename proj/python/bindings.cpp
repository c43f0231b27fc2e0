#include "esdlab/channel.hpp"
#include "esdlab/entanglement.hpp"
#include "esdlab/errors.hpp"
#include "esdlab/extremal.hpp"
#include "esdlab/io.hpp"
#include "esdlab/mcstats.hpp"
#include "esdlab/robustness.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace esdlab;

namespace {

Kind parse_kind(const std::string& s) {
  if (s == "mres") return Kind::MRES;
  if (s == "mfes") return Kind::MFES;
  if (s == "quasi") return Kind::QuasiMFES;
  throw InvalidArgument("kind must be mres, mfes or quasi");
}

Measure parse_measure(const std::string& s) {
  if (s == "c") return Measure::Concurrence;
  if (s == "n") return Measure::Negativity;
  throw InvalidArgument("measure must be c or n");
}

py::dict point_dict(const ExtremalPoint& p) {
  py::dict d;
  d["kind"] = to_string(p.kind);
  d["measure"] = to_string(p.measure);
  d["r"] = p.params.r;
  d["theta"] = p.params.theta;
  d["entanglement"] = p.entanglement;
  d["robustness"] = p.robustness;
  d["delta"] = p.delta;
  return d;
}

py::dict robustness_dict(const RobustnessResult& r) {
  py::dict d;
  d["s_crit"] = r.s_crit;
  d["robustness"] = r.robustness;
  d["method"] = to_string(r.method);
  d["residual"] = r.residual;
  return d;
}

}  // namespace

PYBIND11_MODULE(_esdlab, m) {
  m.doc() = "Entanglement sudden death and robustness of two-qubit states";

  static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<InvalidState>(m, "InvalidState", PyExc_ValueError);
  py::register_exception<SeparableState>(m, "SeparableState", base.ptr());
  py::register_exception<RootNotFound>(m, "RootNotFound", base.ptr());
  py::register_exception<Degenerate>(m, "Degenerate", base.ptr());

  m.def("make_ansatz", [](double r, double theta) { return make_ansatz({r, theta}).matrix(); },
        py::arg("r"), py::arg("theta"));
  m.def("concurrence", [](const Matrix4c& rho) { return concurrence(DensityMatrix(rho)); });
  m.def("negativity", [](const Matrix4c& rho) { return negativity(DensityMatrix(rho)); });
  m.def("linear_entropy", [](const Matrix4c& rho) { return linear_entropy(DensityMatrix(rho)); });
  m.def("partial_transpose", [](const Matrix4c& rho) { return partial_transpose(rho); });
  m.def(
      "depolarize",
      [](const Matrix4c& rho, double delta, double s) {
        return apply_depolarizing(DensityMatrix(rho), ChannelParams(delta, s)).matrix();
      },
      py::arg("rho"), py::arg("delta"), py::arg("s"));

  m.def(
      "s_crit",
      [](const Matrix4c& rho, double delta) { return robustness_dict(s_crit_numeric(DensityMatrix(rho), delta)); },
      py::arg("rho"), py::arg("delta"));
  m.def(
      "s_crit_ansatz",
      [](double r, double theta, double delta) { return robustness_dict(s_crit_ansatz({r, theta}, delta)); },
      py::arg("r"), py::arg("theta"), py::arg("delta"));
  m.def(
      "robustness_pure", [](double c, double delta) { return robustness_pure(c, delta).robustness; },
      py::arg("c"), py::arg("delta"));
  m.def(
      "normalized_robustness",
      [](const Matrix4c& rho, double delta, const std::string& measure) {
        return normalized_robustness(DensityMatrix(rho), delta, parse_measure(measure)).value;
      },
      py::arg("rho"), py::arg("delta"), py::arg("measure"));

  m.def(
      "extremal",
      [](const std::string& kind, const std::string& measure, double value, double delta) {
        return point_dict(extremal_at(parse_kind(kind), parse_measure(measure), value, delta));
      },
      py::arg("kind"), py::arg("measure"), py::arg("value"), py::arg("delta"));
  m.def(
      "family_csv",
      [](const std::string& kind, const std::string& measure, double delta, int grid) {
        std::ostringstream os;
        write_family_csv(os, family(parse_kind(kind), parse_measure(measure), delta, grid));
        return os.str();
      },
      py::arg("kind"), py::arg("measure"), py::arg("delta"), py::arg("grid") = 100);
  m.def(
      "ensemble_csv",
      [](std::uint64_t seed, std::size_t count, double delta, const std::string& mode) {
        if (mode != "simplex" && mode != "alpha") throw InvalidArgument("mode must be simplex or alpha");
        const SpectrumMode sm = mode == "alpha" ? SpectrumMode::AlphaAngles : SpectrumMode::UniformSimplex;
        Ensemble e;
        {
          py::gil_scoped_release release;
          e = run_ensemble({seed, count, sm, 0.0}, delta);
        }
        std::ostringstream os;
        write_ensemble_csv(os, e.records);
        return os.str();
      },
      py::arg("seed"), py::arg("count"), py::arg("delta"), py::arg("mode") = "simplex");

  m.attr("BELL_ROBUSTNESS") = kBellRobustness;
  m.attr("SCHEMA_LINE") = kSchemaLine;
}
