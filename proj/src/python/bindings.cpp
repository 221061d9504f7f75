#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nabla/cli.hpp"
#include "nabla/dfc.hpp"
#include "nabla/errors.hpp"
#include "nabla/rl_ops.hpp"
#include "nabla/schrodinger.hpp"
#include "nabla/serialization.hpp"
#include "nabla/special_functions.hpp"
#include "nabla/verify.hpp"

#include <sstream>

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Nabla fractional calculus and radial-equation solver core";

    py::register_exception<nabla::domain_error>(m, "DomainError",
                                                PyExc_ValueError);
    py::register_exception<nabla::usage_error>(m, "UsageError",
                                               PyExc_ValueError);
    py::register_exception<nabla::convergence_error>(m, "ConvergenceError",
                                                     PyExc_RuntimeError);
    py::register_exception<nabla::unavailable_error>(m, "UnavailableError",
                                                     PyExc_RuntimeError);

    m.def("gamma", &nabla::gamma_fn, py::arg("x"),
          "Gamma function on the real line");
    m.def("log_gamma", &nabla::log_gamma, py::arg("x"),
          "log of |Gamma(x)|");
    m.def("binomial", &nabla::binomial_general, py::arg("nu"), py::arg("n"),
          "generalized binomial coefficient C(nu, n)");
    m.def("hyp1f1", &nabla::kummer_1f1, py::arg("a"), py::arg("b"),
          py::arg("z"), "confluent hypergeometric function 1F1(a; b; z)");
    m.def("rising_factorial", &nabla::rising_factorial, py::arg("t"),
          py::arg("nu"));

    py::class_<nabla::GridFunction>(m, "GridFunction")
        .def(py::init([](std::int64_t base, std::vector<double> values) {
                 nabla::GridFunction u;
                 u.base = base;
                 u.values = std::move(values);
                 return u;
             }),
             py::arg("base"), py::arg("values"))
        .def_readwrite("base", &nabla::GridFunction::base)
        .def_readwrite("values", &nabla::GridFunction::values)
        .def("at", &nabla::GridFunction::at, py::arg("t"))
        .def("last", &nabla::GridFunction::last);

    m.def("nabla_difference", &nabla::nabla, py::arg("u"),
          "backward difference as a grid map");
    m.def("shift", &nabla::shift, py::arg("u"), py::arg("n"));
    m.def("fractional_sum", &nabla::fractional_sum, py::arg("u"),
          py::arg("nu"), py::arg("t"));
    m.def("fractional_difference", &nabla::fractional_difference,
          py::arg("u"), py::arg("nu"), py::arg("t"));
    m.def("power_rule", &nabla::power_rule, py::arg("nu"), py::arg("upsilon"),
          py::arg("a"), py::arg("t"));
    m.def("leibniz_difference", &nabla::leibniz_difference, py::arg("u"),
          py::arg("y"), py::arg("nu"), py::arg("t"));

    py::class_<nabla::ExpPowerTerm>(m, "ExpPowerTerm")
        .def(py::init([](double kappa, double c, double p) {
                 return nabla::ExpPowerTerm{kappa, c, p};
             }),
             py::arg("kappa") = 1.0, py::arg("c") = 0.0, py::arg("p") = 0.0)
        .def_readwrite("kappa", &nabla::ExpPowerTerm::kappa)
        .def_readwrite("c", &nabla::ExpPowerTerm::c)
        .def_readwrite("p", &nabla::ExpPowerTerm::p);

    py::class_<nabla::ConfluentFactor>(m, "ConfluentFactor")
        .def_readonly("a", &nabla::ConfluentFactor::a)
        .def_readonly("b", &nabla::ConfluentFactor::b)
        .def_readonly("scale", &nabla::ConfluentFactor::scale);

    py::class_<nabla::StructuredFunction>(m, "StructuredFunction")
        .def_readonly("terms", &nabla::StructuredFunction::terms)
        .def_readonly("f1f1", &nabla::StructuredFunction::f1f1)
        .def("__call__",
             [](const nabla::StructuredFunction& f, double r) {
                 return nabla::evaluate(f, r);
             },
             py::arg("r"))
        .def("to_json", [](const nabla::StructuredFunction& f) {
            return nabla::structured_to_json(f).dump();
        });

    m.def("rl_exp_power_closed_form", &nabla::rl_exp_power_closed_form,
          py::arg("c"), py::arg("p"), py::arg("mu"));
    m.def("integer_derivative", &nabla::integer_derivative, py::arg("f"),
          py::arg("n"));
    m.def("rl_apply", &nabla::rl_apply, py::arg("term"), py::arg("order"));
    m.def("rl_integral_quadrature", &nabla::rl_integral_quadrature,
          py::arg("term"), py::arg("mu"), py::arg("r"));

    py::class_<nabla::EquationParams>(m, "EquationParams")
        .def(py::init([](double alpha_sq, double beta, double gamma,
                         double delta, int rho) {
                 nabla::EquationParams ep{alpha_sq, beta, gamma, delta, rho};
                 nabla::validate(ep);
                 return ep;
             }),
             py::arg("alpha_sq"), py::arg("beta"), py::arg("gamma"),
             py::arg("delta"), py::arg("rho"))
        .def_readwrite("alpha_sq", &nabla::EquationParams::alpha_sq)
        .def_readwrite("beta", &nabla::EquationParams::beta)
        .def_readwrite("gamma", &nabla::EquationParams::gamma)
        .def_readwrite("delta", &nabla::EquationParams::delta)
        .def_readwrite("rho", &nabla::EquationParams::rho);

    py::class_<nabla::PhysicalParams>(m, "PhysicalParams")
        .def(py::init([](double m_, double hbar, double epsilon, double a,
                         double b, double c, std::int64_t ell, int rho) {
                 return nabla::PhysicalParams{m_, hbar, epsilon, a,
                                              b,  c,    ell,     rho};
             }),
             py::arg("m"), py::arg("hbar"), py::arg("epsilon"),
             py::arg("a") = 0.0, py::arg("b") = 0.0, py::arg("c") = 0.0,
             py::arg("ell") = 0, py::arg("rho") = 0)
        .def_readwrite("m", &nabla::PhysicalParams::m)
        .def_readwrite("hbar", &nabla::PhysicalParams::hbar)
        .def_readwrite("epsilon", &nabla::PhysicalParams::epsilon)
        .def_readwrite("a", &nabla::PhysicalParams::a_pot)
        .def_readwrite("b", &nabla::PhysicalParams::b_pot)
        .def_readwrite("c", &nabla::PhysicalParams::c_pot)
        .def_readwrite("ell", &nabla::PhysicalParams::ell)
        .def_readwrite("rho", &nabla::PhysicalParams::rho);

    py::enum_<nabla::Branch>(m, "Branch")
        .value("I", nabla::Branch::I)
        .value("II", nabla::Branch::II)
        .value("III", nabla::Branch::III)
        .value("IV", nabla::Branch::IV);

    py::class_<nabla::BranchDerivation>(m, "BranchDerivation")
        .def_readonly("tau", &nabla::BranchDerivation::tau)
        .def_readonly("rate", &nabla::BranchDerivation::rate)
        .def_readonly("lambda_plus", &nabla::BranchDerivation::lambda_plus)
        .def_readonly("lambda_minus", &nabla::BranchDerivation::lambda_minus)
        .def_readonly("const_a", &nabla::BranchDerivation::const_a)
        .def_readonly("const_b", &nabla::BranchDerivation::const_b)
        .def_readonly("const_c", &nabla::BranchDerivation::const_c)
        .def_readonly("const_d", &nabla::BranchDerivation::const_d)
        .def_readonly("order_I", &nabla::BranchDerivation::order_I)
        .def_readonly("order_II", &nabla::BranchDerivation::order_II)
        .def_readonly("order_III", &nabla::BranchDerivation::order_III)
        .def_readonly("order_IV", &nabla::BranchDerivation::order_IV);

    py::class_<nabla::FractionalForm>(m, "FractionalForm")
        .def_readonly("prefactor", &nabla::FractionalForm::prefactor)
        .def_readonly("operand", &nabla::FractionalForm::operand)
        .def_readonly("order", &nabla::FractionalForm::order);

    py::class_<nabla::SolutionRecord>(m, "SolutionRecord")
        .def_readonly("equation", &nabla::SolutionRecord::equation)
        .def_readonly("branch", &nabla::SolutionRecord::branch)
        .def_readonly("fractional_form",
                      &nabla::SolutionRecord::fractional_form)
        .def_readonly("rewrite_applied",
                      &nabla::SolutionRecord::rewrite_applied)
        .def_readonly("closed_form", &nabla::SolutionRecord::closed_form)
        .def_readonly("constant_symbol",
                      &nabla::SolutionRecord::arbitrary_constant_symbol)
        .def("__call__",
             [](const nabla::SolutionRecord& sr, double r) {
                 return nabla::evaluate_solution(sr, r);
             },
             py::arg("r"))
        .def("to_json", [](const nabla::SolutionRecord& sr) {
            return nabla::solution_to_json(sr).dump(2);
        });

    m.def("map_physical", &nabla::map_physical, py::arg("pp"));
    m.def("equation_from_rate", &nabla::equation_from_rate, py::arg("eta"),
          py::arg("beta"), py::arg("gamma"), py::arg("delta"), py::arg("rho"));
    m.def("derive_branches", &nabla::derive_branches, py::arg("ep"));
    m.def("construct_solution", &nabla::construct_solution, py::arg("bd"),
          py::arg("branch"));
    m.def("evaluate_solution", &nabla::evaluate_solution, py::arg("sr"),
          py::arg("r"));
    m.def("solution_from_json", [](const std::string& s) {
        return nabla::solution_from_json(nabla::json::parse(s));
    });

    py::class_<nabla::ResidualReport>(m, "ResidualReport")
        .def_readonly("grid", &nabla::ResidualReport::grid)
        .def_readonly("residuals", &nabla::ResidualReport::residuals)
        .def_readonly("scale", &nabla::ResidualReport::scale)
        .def_readonly("relative_max", &nabla::ResidualReport::relative_max);

    py::class_<nabla::EquivalenceReport>(m, "EquivalenceReport")
        .def_readonly("agree", &nabla::EquivalenceReport::agree)
        .def_readonly("max_deviation",
                      &nabla::EquivalenceReport::max_deviation);

    py::class_<nabla::CheckResult>(m, "CheckResult")
        .def_readonly("name", &nabla::CheckResult::name)
        .def_readonly("max_error", &nabla::CheckResult::max_error)
        .def_readonly("tolerance", &nabla::CheckResult::tolerance)
        .def_readonly("pass_", &nabla::CheckResult::pass);

    py::class_<nabla::SuiteReport>(m, "SuiteReport")
        .def_readonly("checks", &nabla::SuiteReport::checks)
        .def_readonly("seed", &nabla::SuiteReport::seed)
        .def_readonly("trials", &nabla::SuiteReport::trials)
        .def("all_pass", &nabla::SuiteReport::all_pass)
        .def("to_json", [](const nabla::SuiteReport& rep) {
            return nabla::report_to_json(rep).dump(2);
        });

    m.def("default_grid", &nabla::default_grid);
    m.def("ode_residual", &nabla::ode_residual, py::arg("ep"), py::arg("sr"),
          py::arg("grid"));
    m.def("representation_equivalence", &nabla::representation_equivalence,
          py::arg("sr"), py::arg("grid"), py::arg("tol") = 1e-6);
    m.def("identity_suite", &nabla::identity_suite, py::arg("seed") = 42,
          py::arg("trials") = 200);
    m.def("run_builtin_example", &nabla::run_builtin_example, py::arg("n"),
          py::arg("residual_tol") = 1e-8, py::arg("equiv_tol") = 1e-6);

    m.def("cli_run",
          [](const std::vector<std::string>& args) {
              std::ostringstream out;
              std::ostringstream err;
              const int status = nabla::cli_run(args, out, err);
              return py::make_tuple(status, out.str(), err.str());
          },
          py::arg("args"),
          "run the command-line driver; returns (status, stdout, stderr)");
}
