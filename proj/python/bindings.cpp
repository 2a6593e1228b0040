#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "frontlab/acceptance.hpp"
#include "frontlab/config.hpp"
#include "frontlab/error.hpp"
#include "frontlab/experiments.hpp"
#include "frontlab/halfwave.hpp"
#include "frontlab/parabolic.hpp"
#include "frontlab/parallel.hpp"
#include "frontlab/reaction.hpp"
#include "frontlab/shooting.hpp"
#include "frontlab/stripwave.hpp"
#include "frontlab/wave1d.hpp"

namespace py = pybind11;
using namespace frontlab;

namespace {

py::array_t<double> array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

std::vector<double> nodes(const UniformGrid& g) {
  std::vector<double> out(g.count);
  for (std::size_t i = 0; i < g.count; ++i) out[i] = g.at(i);
  return out;
}

py::dict profile(const Profile& p) {
  py::dict d;
  d["y"] = array(nodes(p.grid));
  d["value"] = array(p.values);
  return d;
}

py::dict field(const Field& u) {
  py::dict d;
  d["x"] = array(nodes(u.x));
  d["y"] = array(nodes(u.y));
  py::array_t<double> v({u.ny(), u.nx()});
  std::copy(u.values.begin(), u.values.end(), v.mutable_data());
  d["value"] = v;
  return d;
}

py::dict halfplane(const HalfPlaneWave& w) {
  py::dict d;
  d["field"] = field(w.field);
  d["speed"] = w.speed;
  d["pin"] = py::make_tuple(w.pin_x, w.pin_y, w.pin_value);
  d["residual"] = w.residual;
  d["max_dx"] = w.max_dx;
  d["min_dy"] = w.min_dy;
  d["left_error"] = w.left_error;
  d["right_sup"] = w.right_sup;
  d["window_deltas"] = w.window_deltas;
  d["violation"] = w.violation();
  return d;
}

py::dict report(const RunReport& r) {
  py::dict d;
  d["experiment"] = r.experiment;
  d["output_dir"] = r.output_dir;
  d["status"] = r.status;
  d["invariant"] = r.invariant;
  d["message"] = r.message;
  d["exit_code"] = r.exit_code;
  py::dict res;
  for (const auto& [k, v] : r.results) res[py::str(k)] = v;
  d["results"] = res;
  d["artifacts"] = r.artifacts;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Reaction-diffusion fronts in the half-plane";

  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error)(e.what());
      exc.attr("invariant") = e.invariant();
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<Reaction>(m, "Reaction")
      .def_static("kpp", &Reaction::kpp)
      .def_static("cubic_bistable", &Reaction::cubic_bistable, py::arg("theta"))
      .def_static("cubic_formula", &Reaction::cubic_formula, py::arg("theta"))
      .def_static("ignition", &Reaction::ignition, py::arg("theta"))
      .def_static("table", &Reaction::table, py::arg("s"), py::arg("f"))
      .def_static("parse", &parse_reaction, py::arg("spec"))
      .def("__call__", [](const Reaction& r, double s) { return r(s); })
      .def("__call__", [](const Reaction& r, py::array_t<double> s) {
        return py::vectorize([&r](double v) { return r(v); })(s);
      })
      .def("antiderivative", &Reaction::antiderivative)
      .def_property_readonly("name", &Reaction::name)
      .def_property_readonly("kind", [](const Reaction& r) { return to_string(r.kind()); })
      .def_property_readonly("theta", &Reaction::theta)
      .def("__repr__", [](const Reaction& r) { return "<Reaction " + r.name() + ">"; });

  py::class_<Boundary>(m, "Boundary")
      .def_static("dirichlet", &Boundary::dirichlet)
      .def_static("robin", &Boundary::robin, py::arg("rho"))
      .def_static("neumann", &Boundary::neumann)
      .def_static("parse", &parse_boundary, py::arg("spec"))
      .def_property_readonly("rho", &Boundary::rho)
      .def("__repr__", [](const Boundary& b) { return "<Boundary " + b.describe() + ">"; });

  m.def("vartheta", &vartheta);
  m.def("validate", [](const Reaction& r, int samples) {
    py::dict d;
    for (const auto& c : validate(r, samples).checks) d[py::str(c.name)] = c.passed;
    return d;
  }, py::arg("reaction"), py::arg("samples") = 10000);

  m.def("critical_slope", &critical_slope);
  m.def("halfline_steady_state", [](const Reaction& r, const Boundary& b, double Y, double h) {
    return profile(halfline_steady_state(r, b, Y, h));
  }, py::arg("reaction"), py::arg("boundary"), py::arg("Y") = 40.0, py::arg("h") = 1e-3);
  m.def("length_map", [](const Reaction& r, const Boundary& b, double alpha, double h) {
    auto e = length_map(r, b, alpha, h);
    py::dict d;
    d["alpha"] = e.alpha;
    d["s_max"] = e.s_max;
    d["K"] = e.K;
    d["L_return"] = e.L_return;
    d["classification"] = to_string(e.classification);
    return d;
  }, py::arg("reaction"), py::arg("boundary"), py::arg("alpha"), py::arg("h") = 1e-3);
  m.def("strip_steady_states", [](const Reaction& r, const Boundary& b, double L) {
    auto s = strip_steady_states(r, b, L);
    py::dict d;
    d["phi_L"] = profile(s.phi_L);
    d["psi_L"] = profile(s.psi_L);
    d["alpha_phi"] = s.alpha_phi;
    d["alpha_psi"] = s.alpha_psi;
    d["energy"] = py::make_tuple(s.energy_phi, s.energy_zero, s.energy_psi);
    return d;
  }, py::arg("reaction"), py::arg("boundary"), py::arg("L"));

  m.def("wave_speed", [](const Reaction& r) { return wave_speed_bistable_ignition(r).speed; });
  m.def("wave_profile", [](const Reaction& r, double c) {
    auto w = r.kind() == ReactionClass::monostable ? wave_profile_at_speed(r, c) : wave_speed_bistable_ignition(r);
    py::dict d = profile(w.profile);
    d["xi"] = d["y"];
    PyDict_DelItemString(d.ptr(), "y");
    d["speed"] = w.speed;
    return d;
  }, py::arg("reaction"), py::arg("c") = 0.0);
  m.def("minimal_speed", [](const Reaction& r, double h, double T) { return minimal_speed_monostable(r, h, T).measured; },
        py::arg("reaction"), py::arg("h") = 0.1, py::arg("T") = 200.0);

  m.def("strip_wave", [](const Reaction& r, const Boundary& b, double L, double h) {
    auto w = strip_wave(r, b, L, h);
    py::dict d;
    d["c_L"] = w.c_L;
    d["c_star"] = w.c_star;
    d["field"] = field(w.field);
    d["left_error"] = w.left_error;
    d["right_sup"] = w.right_sup;
    return d;
  }, py::arg("reaction"), py::arg("boundary"), py::arg("L"), py::arg("h") = 0.5);
  m.def("speed_study", [](const Reaction& r, const Boundary& b, const std::vector<double>& Ls, double h) {
    py::list rows;
    for (const auto& s : speed_convergence_study(r, b, Ls, h).rows) rows.append(py::make_tuple(s.L, s.c_L, s.c_star, s.gap));
    return rows;
  }, py::arg("reaction"), py::arg("boundary"), py::arg("Ls"), py::arg("h") = 0.5);

  m.def("halfplane_wave", [](const Reaction& r, const Boundary& b, double c, const std::vector<double>& schedule,
                             double h, bool require_stable) {
    if (r.kind() == ReactionClass::monostable) {
      MonostableOptions o;
      o.h = h;
      if (!schedule.empty()) {
        o.box_schedule.clear();
        for (double a : schedule) o.box_schedule.emplace_back(a, a);
      }
      return halfplane(monostable_halfplane_wave(r, b, c, o));
    }
    StripLimitOptions o;
    o.h = h;
    o.require_stable = require_stable;
    if (!schedule.empty()) o.L_schedule = schedule;
    return halfplane(ignition_bistable_halfplane_wave(r, b, o));
  }, py::arg("reaction"), py::arg("boundary"), py::arg("c") = 0.0, py::arg("schedule") = std::vector<double>{},
     py::arg("h") = 0.5, py::arg("require_stable") = false);

  m.def("extinction", [](const Reaction& r, const Boundary& b, double amplitude, double radius, double y_center,
                         double X, double Y, double h, double T) {
    auto e = extinction_experiment(r, b, {amplitude, radius, 0.0, y_center}, {X, Y, h, T, 1.0});
    py::dict d;
    d["outcome"] = to_string(e.outcome);
    d["sup_final"] = e.sup_final;
    d["heat_kernel_estimate"] = e.heat_kernel_estimate;
    d["t"] = array(e.t);
    d["sup"] = array(e.sup);
    return d;
  }, py::arg("reaction"), py::arg("boundary"), py::arg("amplitude"), py::arg("radius"), py::arg("y_center"),
     py::arg("X") = 100.0, py::arg("Y") = 100.0, py::arg("h") = 0.5, py::arg("T") = 60.0);

  m.def("run_config", [](const std::string& text, const std::string& output) {
    return report(run_experiment(parse_config(text, "<python>"), output));
  }, py::arg("text"), py::arg("output") = "");
  m.def("run_config_file", [](const std::string& path, const std::string& output) {
    return report(run_config_file(path, output));
  }, py::arg("path"), py::arg("output") = "");
  m.def("export_run", &export_run, py::arg("what"), py::arg("run_dir"));
  m.def("experiments", &experiment_names);

  m.def("acceptance", [](const std::vector<std::string>& only, const std::string& work, bool break_cfl) {
    AcceptanceOptions o;
    o.only = only;
    o.work_dir = work;
    o.break_cfl = break_cfl;
    py::list rows;
    for (const auto& r : run_acceptance(o)) {
      py::dict d;
      d["id"] = r.id;
      d["title"] = r.title;
      d["pass"] = r.pass;
      d["measured"] = r.measured;
      d["tolerance"] = r.tolerance;
      d["known_unattainable"] = r.known_unattainable;
      rows.append(d);
    }
    return rows;
  }, py::arg("only"), py::arg("work") = "acceptance_runs", py::arg("break_cfl") = false);

  m.def("set_threads", &set_thread_count);
  m.def("threads", &thread_count);
}
