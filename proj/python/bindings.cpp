#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oscspec/contour.hpp"
#include "oscspec/errors.hpp"
#include "oscspec/oracle.hpp"
#include "oscspec/quantize.hpp"

namespace py = pybind11;
using namespace oscspec;

namespace {

Geometry geometry_of(const std::string& name) { return Geometry::parse(name); }

py::dict entry_dict(const SpectrumEntry& e) {
  py::dict d;
  d["n"] = e.quantum_numbers.n();
  d["l"] = e.quantum_numbers.l();
  d["N"] = e.quantum_numbers.N().value();
  d["epsilon"] = e.epsilon;
  d["method"] = std::string(to_string(e.method));
  d["bound"] = e.bound;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Oscillator spectra in E3, H3 and S3";

  auto& base = py::register_exception<Error>(m, "Error");
  py::register_exception<NoBoundStateError>(m, "NoBoundStateError", base.ptr());
  py::register_exception<NoClassicalRegionError>(m, "NoClassicalRegionError", base.ptr());
  py::register_exception<QuadratureFailure>(m, "QuadratureFailure", base.ptr());
  py::register_exception<ConfigurationError>(m, "ConfigurationError", PyExc_ValueError);

  m.def(
      "exact_epsilon",
      [](const std::string& g, double mu, int n, int l) {
        return entry_dict(exact_epsilon(geometry_of(g), mu, QuantumNumbers(n, l)));
      },
      py::arg("geometry"), py::arg("mu"), py::arg("n"), py::arg("l"));

  m.def(
      "naive_wkb_epsilon",
      [](const std::string& g, double mu, int n, int l) {
        return entry_dict(naive_wkb_epsilon(geometry_of(g), mu, QuantumNumbers(n, l)));
      },
      py::arg("geometry"), py::arg("mu"), py::arg("n"), py::arg("l"));

  m.def(
      "solve_epsilon",
      [](const std::string& g, double mu, int n, int l, const std::string& scheme) {
        return entry_dict(
            solve_epsilon(geometry_of(g), mu, QuantumNumbers(n, l), parse_scheme(scheme)));
      },
      py::arg("geometry"), py::arg("mu"), py::arg("n"), py::arg("l"),
      py::arg("scheme") = "corrected");

  m.def("bound_state_count", &bound_state_count, py::arg("mu"), py::arg("l"));

  m.def(
      "contour_term",
      [](const std::string& g, double mu, int l, double epsilon, int order,
         const std::string& scheme, int samples) {
        const auto c = build_coefficients(geometry_of(g), mu, l, epsilon, parse_scheme(scheme));
        const MomentumField field(c);
        py::gil_scoped_release release;
        return integrate_term(order, field, default_contour(field, samples)).weighted();
      },
      "(1/i)^order times the contour integral of Q_order dt", py::arg("geometry"),
      py::arg("mu"), py::arg("l"), py::arg("epsilon"), py::arg("order"),
      py::arg("scheme") = "corrected", py::arg("samples") = 4096);

  m.def(
      "oracle_solve",
      [](const std::string& g, double mu, int l, int n, int grid_points) {
        oracle::OracleConfig config;
        config.grid_points = grid_points;
        oracle::EigenResult r;
        {
          py::gil_scoped_release release;
          r = oracle::solve(geometry_of(g), mu, l, n, config);
        }
        py::dict d;
        d["epsilon"] = r.epsilon;
        d["node_count"] = r.node_count;
        d["converged"] = r.converged;
        d["no_bound_state"] = r.no_bound_state;
        d["diagnostics"] = r.diagnostics;
        std::vector<double> rs;
        std::vector<double> us;
        for (const auto& p : r.wavefunction) {
          rs.push_back(p.r);
          us.push_back(p.u);
        }
        d["r"] = rs;
        d["u"] = us;
        return d;
      },
      py::arg("geometry"), py::arg("mu"), py::arg("l"), py::arg("n"),
      py::arg("grid_points") = 20000);
}
