#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "borelab/config.hpp"
#include "borelab/error.hpp"
#include "borelab/pde.hpp"
#include "borelab/shape.hpp"

namespace py = pybind11;
using namespace borelab;

namespace {

py::array_t<double> array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::list points(const std::vector<tw::Extremum>& es) {
  py::list out;
  for (const auto& e : es) out.append(py::make_tuple(e.xi, e.u));
  return out;
}

py::dict classify(double c, double delta, double epsilon) {
  const auto p = wave::make_params(c, delta, epsilon);
  const auto r = wave::classify_regime(p);
  const auto sp = wave::tail_eigenvalues(p);
  py::dict d;
  d["kind"] = wave::to_string(r.kind);
  d["epsilon_squared"] = r.criterion_lhs;
  d["criterion_rhs"] = r.criterion_rhs;
  d["critical_epsilon"] = wave::critical_epsilon(c, delta);
  d["lambda_minus"] = sp.lambda_minus;
  d["lambda_plus"] = sp.lambda_plus;
  d["Lambda_minus"] = sp.tail.minus();
  d["Lambda_plus"] = sp.tail.plus();
  d["alpha"] = sp.alpha;
  return d;
}

py::dict profile(double c, double delta, double epsilon) {
  const auto prof = tw::integrate_profile(wave::make_params(c, delta, epsilon));
  const auto r = tw::shape_report(prof);
  py::dict d;
  d["xi"] = array(prof.xi);
  d["u"] = array(prof.u);
  d["v"] = array(prof.v);
  d["eta"] = array(prof.eta);
  d["regime_observed"] = tw::to_string(r.regime_observed);
  d["maxima"] = points(r.maxima);
  d["minima"] = points(r.minima);
  d["inflections"] = points(r.inflections);
  d["tail_decay_rate_plus"] = r.tail_decay_rate_plus;
  d["tail_decay_rate_minus"] = r.tail_decay_rate_minus;
  d["tail_frequency"] = r.tail_frequency ? py::cast(*r.tail_frequency) : py::none();
  d["energy_residual"] = tw::verify_energy_identity(prof);
  return d;
}

py::list evolve_preset(const std::string& name, std::optional<double> t_end) {
  auto cfg = config::find_preset(name).config;
  if (t_end) cfg.t_end = *t_end;
  const auto run = config::run_config(cfg);
  const auto snaps = pde::evolve(run);
  const auto x = array(run.grid.nodes());
  py::list out;
  for (const auto& s : snaps) {
    py::dict d;
    d["t"] = s.t;
    d["x"] = x;
    d["eta"] = array(s.eta);
    d["u"] = array(s.u);
    d["mass"] = pde::mass(s, run.grid);
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  auto base = py::register_exception<Error>(m, "BoreLabError");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<NumericalFailure>(m, "NumericalFailure", base.ptr());

  m.def("equilibria", [](double c) {
    const auto e = wave::equilibria(c);
    py::dict d;
    d["u_minus"] = e.u_minus;
    d["u_plus"] = e.u_plus;
    d["u_tail"] = e.u_tail;
    d["eta_tail"] = e.eta_tail;
    d["u_inflect"] = e.u_inflect;
    return d;
  }, py::arg("c"));
  m.def("alpha", &wave::alpha, py::arg("c"));
  m.def("critical_epsilon", &wave::critical_epsilon, py::arg("c"), py::arg("delta"));
  m.def("solitary_amplitude", py::overload_cast<double>(&wave::solitary_amplitude), py::arg("c"));
  m.def("speed_from_amplitude", &wave::speed_from_amplitude, py::arg("eta_bar"));
  m.def("froude_from_tail", &wave::froude_from_tail, py::arg("eta_tail"));
  m.def("bore_speed_t1994", &wave::bore_speed_t1994, py::arg("eta_tail"));
  m.def("potential", [](double u, double c, double delta) {
    return wave::potential(u, wave::make_params(c, delta, 0.0));
  }, py::arg("u"), py::arg("c"), py::arg("delta"));
  m.def("classify", &classify, py::arg("c"), py::arg("delta"), py::arg("epsilon"));
  m.def("profile", &profile, py::arg("c"), py::arg("delta"), py::arg("epsilon"));
  m.def("presets", [] {
    std::vector<std::string> names;
    for (const auto& p : config::presets()) names.push_back(p.name);
    return names;
  });
  m.def("evolve_preset", &evolve_preset, py::arg("name"), py::arg("t_end") = py::none());
}
