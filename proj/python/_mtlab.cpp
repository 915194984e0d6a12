#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mtlab/analysis.hpp"
#include "mtlab/errors.hpp"
#include "mtlab/io.hpp"
#include "mtlab/maximizer.hpp"
#include "mtlab/perturbations.hpp"
#include "mtlab/profiles.hpp"
#include "mtlab/quadrature.hpp"
#include "mtlab/shooting.hpp"

namespace py = pybind11;
using namespace mtlab;

PYBIND11_MODULE(_mtlab, m) {
  m.doc() = "Radial Moser-Trudinger critical points: profiles, shooting, expansion checks, maximization";

  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  m.def("eta0", &eta0, py::arg("r"));
  m.def("w0", &w0, py::arg("r"));
  m.def("zeta0", &zeta0, py::arg("r"));
  m.def("psi0", &psi0, py::arg("r"));
  m.def("xi", &xi, py::arg("r"));

  py::class_<PerturbationSpec>(m, "PerturbationSpec")
      .def_readonly("family", &PerturbationSpec::family)
      .def_readonly("params", &PerturbationSpec::params)
      .def_readonly("sup_h", &PerturbationSpec::sup_h)
      .def_readonly("inf_h", &PerturbationSpec::inf_h)
      .def_readonly("h_only", &PerturbationSpec::h_only)
      .def_readonly("trivial", &PerturbationSpec::trivial)
      .def("h", &PerturbationSpec::h_at, py::arg("t"))
      .def("g", &PerturbationSpec::g_at, py::arg("t"));
  m.def("make_family", &make_family, py::arg("name"), py::arg("params") = std::map<std::string, double>{});
  m.def("no_perturbation", &no_perturbation);
  m.def("check_conditions", [](const PerturbationSpec& s) {
    py::dict out;
    for (const auto& r : check_conditions(s)) out[py::str(r.name)] = verdict_name(r.verdict);
    return out;
  }, py::arg("spec"));

  py::class_<ShotOptions>(m, "ShotOptions")
      .def(py::init<>())
      .def_readwrite("tol", &ShotOptions::tol)
      .def_readwrite("split_exponent", &ShotOptions::split_exponent);

  py::class_<ShotSolution>(m, "ShotSolution")
      .def_readonly("mu", &ShotSolution::mu)
      .def_readonly("log_R", &ShotSolution::log_R)
      .def_readonly("log_lambda", &ShotSolution::log_lambda)
      .def_readonly("energy_total", &ShotSolution::energy_total)
      .def_readonly("energy_inner", &ShotSolution::energy_inner)
      .def_readonly("energy_outer", &ShotSolution::energy_outer)
      .def_readonly("moser_integral", &ShotSolution::moser_integral)
      .def("profile", &physical_profile, py::arg("r"))
      .def("to_json", [](const ShotSolution& s) { return shot_json(s, pde_residual(s)).dump(); });
  m.def("shoot", &shoot, py::arg("mu"), py::arg("spec") = no_perturbation(), py::arg("options") = ShotOptions{});
  m.def("pde_residual", py::overload_cast<const ShotSolution&>(&pde_residual), py::arg("solution"));
  m.def("eta_below_eta0", [](const ShotSolution& s) { return comparison_eta0(s).holds; }, py::arg("solution"));

  py::class_<ExpansionScan>(m, "ExpansionScan")
      .def_readonly("mu_values", &ExpansionScan::mu_values)
      .def_readonly("energies", &ExpansionScan::energies)
      .def_readonly("c_values", &ExpansionScan::c_values)
      .def_readonly("inner_coeffs", &ExpansionScan::inner_coeffs)
      .def_readonly("outer_coeffs", &ExpansionScan::outer_coeffs)
      .def_readonly("failures", &ExpansionScan::failures)
      .def_property_readonly("window", [](const ExpansionScan& s) { return std::pair(s.window.lo, s.window.hi); })
      .def("all_in_window", &ExpansionScan::all_in_window);
  m.def("energy_scan", &energy_scan, py::arg("mu_list"), py::arg("spec") = no_perturbation(),
        py::arg("options") = ShotOptions{});

  py::class_<HierarchyReport>(m, "HierarchyReport")
      .def_readonly("mu", &HierarchyReport::mu)
      .def_readonly("sup_w_err", &HierarchyReport::sup_w_err)
      .def_readonly("sup_z_err", &HierarchyReport::sup_z_err)
      .def_readonly("phi_over_xi", &HierarchyReport::phi_over_xi)
      .def_readonly("perturbed_ratio", &HierarchyReport::perturbed_ratio);
  m.def("residual_hierarchy", &residual_hierarchy, py::arg("mu"), py::arg("spec") = no_perturbation(),
        py::arg("options") = ShotOptions{});

  m.def("branch_scan", [](const std::vector<double>& lambdas, double mu_max) {
    std::vector<double> grid;
    for (double mu : default_branch_grid())
      if (mu <= mu_max) grid.push_back(mu);
    const auto scan = branch_scan(grid, no_perturbation(), lambdas);
    py::dict out;
    out["lambda_star"] = scan.lambda_star;
    out["mu_star"] = scan.mu_star;
    py::list qs;
    for (const auto& q : scan.queries) {
      py::list roots;
      for (const auto& r : q.roots) roots.append(py::make_tuple(r.mu, r.energy, r.residual));
      qs.append(py::make_tuple(q.lambda, roots));
    }
    out["queries"] = qs;
    return out;
  }, py::arg("lambdas") = std::vector<double>{}, py::arg("mu_max") = 20.0);

  m.def("integral_tables", [](double tol) {
    py::list out;
    for (const auto& r : integral_tables(tol)) out.append(py::make_tuple(r.name, r.closed_form, r.numeric.value));
    return out;
  }, py::arg("tol") = 1e-11);
  m.def("beta_z0", []() {
    const auto b = z0_beta_combination(integral_tables());
    return py::make_tuple(b.exact, b.numeric);
  });

  py::class_<MaximizerOptions>(m, "MaximizerOptions")
      .def(py::init<>())
      .def_readwrite("r_min", &MaximizerOptions::r_min)
      .def_readwrite("nodes", &MaximizerOptions::nodes)
      .def_readwrite("tol", &MaximizerOptions::tol)
      .def_readwrite("max_iterations", &MaximizerOptions::max_iterations)
      .def_readwrite("start", &MaximizerOptions::start);
  py::class_<MaximizerResult>(m, "MaximizerResult")
      .def_readonly("alpha", &MaximizerResult::alpha)
      .def_readonly("value", &MaximizerResult::value)
      .def_readonly("lambda_hat", &MaximizerResult::lambda_hat)
      .def_readonly("iterations", &MaximizerResult::iterations)
      .def_readonly("converged", &MaximizerResult::converged)
      .def_property_readonly("energy", [](const MaximizerResult& r) { return dirichlet_energy(r.field); })
      .def_property_readonly("radii", [](const MaximizerResult& r) {
        std::vector<double> out;
        for (double t : r.field.t) out.push_back(std::exp(t));
        return out;
      })
      .def_property_readonly("values", [](const MaximizerResult& r) { return r.field.values; })
      .def("moser_bound_holds", [](const MaximizerResult& r) { return pointwise_moser_bound(r).holds; })
      .def("to_json", [](const MaximizerResult& r) {
        return maximizer_json(r, multiplier_estimate(r, no_perturbation())).dump();
      });
  m.def("maximize_subcritical", &maximize_subcritical, py::arg("alpha"), py::arg("spec") = no_perturbation(),
        py::arg("options") = MaximizerOptions{});
}
