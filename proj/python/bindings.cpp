#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <vector>

#include "cstirap/adiabatic.hpp"
#include "cstirap/config.hpp"
#include "cstirap/csv.hpp"
#include "cstirap/dynamics.hpp"
#include "cstirap/eigen.hpp"
#include "cstirap/model.hpp"
#include "cstirap/pulses.hpp"
#include "cstirap/sweep.hpp"

namespace py = pybind11;
using namespace cstirap;

namespace {

using NestedMatrix = std::vector<std::vector<complexd>>;

NestedMatrix to_nested(const ComplexMatrix& m) {
  NestedMatrix out(static_cast<std::size_t>(m.dim),
                   std::vector<complexd>(static_cast<std::size_t>(m.dim)));
  for (int r = 0; r < m.dim; ++r)
    for (int c = 0; c < m.dim; ++c) out[r][c] = m(r, c);
  return out;
}

ComplexMatrix from_nested(const NestedMatrix& rows) {
  const int dim = static_cast<int>(rows.size());
  if (dim != 2 && dim != 3) throw config_error("matrix must be 2x2 or 3x3");
  ComplexMatrix m;
  m.dim = dim;
  for (int r = 0; r < dim; ++r) {
    if (static_cast<int>(rows[static_cast<std::size_t>(r)].size()) != dim)
      throw config_error("matrix rows must all have the matrix dimension");
    for (int c = 0; c < dim; ++c)
      m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }
  return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pulsed two-photon ionization dynamics: STIRAP into continuum and "
            "LICS-STIRAP";

  py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<numeric_error>(m, "NumericError", PyExc_RuntimeError);

  py::class_<GaussianPulse>(m, "GaussianPulse")
      .def(py::init<double, double, double>(), py::arg("amplitude"), py::arg("center"),
           py::arg("width"))
      .def("value", &GaussianPulse::value, py::arg("t"))
      .def("area", &GaussianPulse::area)
      .def_property_readonly("amplitude", &GaussianPulse::amplitude)
      .def_property_readonly("center", &GaussianPulse::center)
      .def_property_readonly("width", &GaussianPulse::width);

  py::class_<PulseSet>(m, "PulseSet")
      .def(py::init<GaussianPulse, GaussianPulse, GaussianPulse>(), py::arg("pump"),
           py::arg("ionizing"), py::arg("control"))
      .def_readwrite("pump", &PulseSet::pump)
      .def_readwrite("ionizing", &PulseSet::ionizing)
      .def_readwrite("control", &PulseSet::control);

  py::class_<TimeWindow>(m, "TimeWindow")
      .def(py::init<double, double>(), py::arg("t_start"), py::arg("t_end"))
      .def_readwrite("t_start", &TimeWindow::t_start)
      .def_readwrite("t_end", &TimeWindow::t_end);

  m.def("time_window", &time_window, py::arg("pulses"), py::arg("padding") = 5.0);

  py::enum_<ModelKind>(m, "ModelKind")
      .value("two_level", ModelKind::two_level)
      .value("three_level", ModelKind::three_level);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<>())
      .def_readwrite("delta_pump", &ModelParams::delta_pump)
      .def_readwrite("delta_control", &ModelParams::delta_control)
      .def_readwrite("gamma_loss", &ModelParams::gamma_loss)
      .def_readwrite("fano_q", &ModelParams::fano_q)
      .def_readwrite("stark_1", &ModelParams::stark_1)
      .def_readwrite("stark_2", &ModelParams::stark_2)
      .def_readwrite("stark_c", &ModelParams::stark_c)
      .def_readwrite("kind", &ModelParams::kind);

  m.def("hamiltonian2",
        [](double t, const PulseSet& p, const ModelParams& mp) {
          return to_nested(hamiltonian_2(t, p, mp));
        },
        py::arg("t"), py::arg("pulses"), py::arg("params"));
  m.def("hamiltonian3",
        [](double t, const PulseSet& p, const ModelParams& mp) {
          return to_nested(hamiltonian_3(t, p, mp));
        },
        py::arg("t"), py::arg("pulses"), py::arg("params"));

  py::class_<Signals>(m, "Signals")
      .def_readonly("ionization", &Signals::ionization)
      .def_readonly("fluorescence", &Signals::fluorescence)
      .def_readonly("residual_p1", &Signals::residual_p1)
      .def_readonly("residual_p2", &Signals::residual_p2)
      .def_readonly("residual_pc", &Signals::residual_pc)
      .def_readonly("window_warning", &Signals::window_warning)
      .def("__repr__", [](const Signals& s) {
        return "<Signals " + signals_summary(s) + ">";
      });

  py::class_<TrajectorySample>(m, "TrajectorySample")
      .def_readonly("t", &TrajectorySample::t)
      .def_readonly("p1", &TrajectorySample::p1)
      .def_readonly("p2", &TrajectorySample::p2)
      .def_readonly("pc", &TrajectorySample::pc)
      .def_readonly("fluorescence", &TrajectorySample::fluorescence)
      .def_readonly("ionized", &TrajectorySample::ionized);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("samples", &Trajectory::samples)
      .def_readonly("t_start", &Trajectory::t_start)
      .def_readonly("t_end", &Trajectory::t_end)
      .def_readonly("dim", &Trajectory::dim)
      .def("signals", &signals_from)
      .def("times",
           [](const Trajectory& tr) {
             std::vector<double> out;
             out.reserve(tr.samples.size());
             for (const auto& s : tr.samples) out.push_back(s.t);
             return out;
           })
      .def("populations", [](const Trajectory& tr) {
        std::vector<std::vector<double>> out(3);
        for (const auto& s : tr.samples) {
          out[0].push_back(s.p1);
          out[1].push_back(s.p2);
          out[2].push_back(s.pc);
        }
        return out;
      });

  m.def("propagate",
        [](const PulseSet& p, const ModelParams& mp, std::optional<TimeWindow> window,
           double tol_rel, double tol_abs, int samples) {
          const TimeWindow win = window ? *window : time_window(p);
          return propagate(p, mp, win, Tolerances{tol_rel, tol_abs}, samples);
        },
        py::arg("pulses"), py::arg("params"), py::arg("window") = std::nullopt,
        py::arg("tol_rel") = 1e-9, py::arg("tol_abs") = 1e-12,
        py::arg("samples") = 2000);

  py::class_<TildeQuantities>(m, "TildeQuantities")
      .def_readonly("delta_tilde", &TildeQuantities::delta_tilde)
      .def_readonly("small_delta_tilde", &TildeQuantities::small_delta_tilde)
      .def_readonly("gamma_tilde", &TildeQuantities::gamma_tilde)
      .def_readonly("eta", &TildeQuantities::eta);
  m.def("tilde", &tilde, py::arg("t"), py::arg("pulses"), py::arg("params"));

  py::class_<PerturbativeEigensystem>(m, "PerturbativeEigensystem")
      .def_readonly("eigenvalues", &PerturbativeEigensystem::eigenvalues)
      .def_readonly("eigenvectors", &PerturbativeEigensystem::eigenvectors)
      .def_readonly("xi", &PerturbativeEigensystem::xi)
      .def_readonly("regime_ratio", &PerturbativeEigensystem::regime_ratio);
  m.def("perturbative_eigensystem", &perturbative_eigensystem, py::arg("t"),
        py::arg("pulses"), py::arg("params"));

  py::class_<TwoLevelPopulations>(m, "TwoLevelPopulations")
      .def_readonly("p1", &TwoLevelPopulations::p1)
      .def_readonly("p2", &TwoLevelPopulations::p2);
  m.def("elimination_p1_p2", &elimination_p1_p2, py::arg("t"), py::arg("pulses"),
        py::arg("params"));

  m.def("quasi_dark_p0", &quasi_dark_p0, py::arg("t"), py::arg("pulses"),
        py::arg("params"));

  py::class_<AnalyticPopulations>(m, "AnalyticPopulations")
      .def_readonly("p0", &AnalyticPopulations::p0)
      .def_readonly("p1", &AnalyticPopulations::p1)
      .def_readonly("p2", &AnalyticPopulations::p2)
      .def_readonly("pc", &AnalyticPopulations::pc);
  m.def("analytic_populations", &analytic_populations, py::arg("t"), py::arg("pulses"),
        py::arg("params"));

  m.def("analytic_signals", &analytic_signals, py::arg("pulses"), py::arg("params"));
  m.def("analytic_trajectory", &analytic_trajectory, py::arg("pulses"), py::arg("params"),
        py::arg("window"), py::arg("samples") = 2000);

  m.def("exact_eigensystem",
        [](const NestedMatrix& rows) {
          const ExactEigensystem sys = exact_eigensystem(from_nested(rows));
          std::vector<complexd> values(sys.eigenvalues.begin(),
                                       sys.eigenvalues.begin() + sys.dim);
          std::vector<std::vector<complexd>> vectors;
          for (int k = 0; k < sys.dim; ++k)
            vectors.emplace_back(sys.eigenvectors[static_cast<std::size_t>(k)].begin(),
                                 sys.eigenvectors[static_cast<std::size_t>(k)].begin() +
                                     sys.dim);
          return py::make_tuple(values, vectors);
        },
        py::arg("matrix"), "eigenvalues and unit right eigenvectors of a 2x2/3x3 matrix");

  py::enum_<AxisScale>(m, "AxisScale")
      .value("linear", AxisScale::linear)
      .value("log", AxisScale::log);
  py::enum_<SweepMode>(m, "SweepMode")
      .value("numeric", SweepMode::numeric)
      .value("analytic", SweepMode::analytic);

  py::class_<AxisSpec>(m, "AxisSpec")
      .def(py::init([](const std::string& name, double lo, double hi, int count,
                       AxisScale scale) {
             const auto p = parse_sweep_parameter(name);
             if (!p) throw config_error("unknown sweep parameter '" + name + "'");
             AxisSpec axis{*p, lo, hi, count, scale};
             axis.validate();
             return axis;
           }),
           py::arg("parameter"), py::arg("min"), py::arg("max"), py::arg("count"),
           py::arg("scale") = AxisScale::linear)
      .def_readonly("min", &AxisSpec::min)
      .def_readonly("max", &AxisSpec::max)
      .def_readonly("count", &AxisSpec::count)
      .def("value_at", &AxisSpec::value_at, py::arg("i"));

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("mode", &SweepResult::mode)
      .def_readonly("failures", &SweepResult::failures)
      .def_readonly("grid", &SweepResult::grid)
      .def("csv", [](const SweepResult& r) {
        std::ostringstream os;
        write_grid_csv(os, r);
        return os.str();
      });

  m.def("sweep",
        [](const PulseSet& p, const ModelParams& mp, const std::vector<AxisSpec>& axes,
           SweepMode mode, double tol_rel, double tol_abs, double padding, int workers) {
          SweepOptions options;
          options.tolerances = Tolerances{tol_rel, tol_abs};
          options.padding = padding;
          options.workers = workers;
          return sweep(p, mp, axes, mode, options);
        },
        py::arg("pulses"), py::arg("params"), py::arg("axes"),
        py::arg("mode") = SweepMode::numeric, py::arg("tol_rel") = 1e-9,
        py::arg("tol_abs") = 1e-12, py::arg("padding") = 5.0, py::arg("workers") = 0);

  py::class_<ArgmaxResult>(m, "ArgmaxResult")
      .def_readonly("index", &ArgmaxResult::index)
      .def_readonly("values", &ArgmaxResult::values)
      .def_readonly("ionization", &ArgmaxResult::ionization);
  m.def("argmax", &argmax, py::arg("result"));

  py::class_<AdiabaticityReport>(m, "AdiabaticityReport")
      .def_readonly("depletion_ratio", &AdiabaticityReport::depletion_ratio)
      .def_readonly("hierarchy_ratio", &AdiabaticityReport::hierarchy_ratio)
      .def_readonly("pump_area", &AdiabaticityReport::pump_area)
      .def_readonly("ionizing_area", &AdiabaticityReport::ionizing_area)
      .def_readonly("pump_area_large", &AdiabaticityReport::pump_area_large)
      .def_readonly("ionizing_area_large", &AdiabaticityReport::ionizing_area_large)
      .def_readonly("hierarchy_large", &AdiabaticityReport::hierarchy_large);
  m.def("check_conditions", &check_conditions, py::arg("t"), py::arg("pulses"),
        py::arg("params"));
}
