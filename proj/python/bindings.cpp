#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kpgm/cli/commands.hpp"
#include "kpgm/cli/config.hpp"
#include "kpgm/errors.hpp"
#include "kpgm/model.hpp"
#include "kpgm/spectrum.hpp"
#include "kpgm/thermo.hpp"
#include "kpgm/validation.hpp"
#include "kpgm/version.hpp"
#include "kpgm/wavefunction.hpp"

namespace py = pybind11;
using namespace kpgm;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Kratzer plus screened generalized Morse: spectrum, states and thermodynamics";
    m.attr("__version__") = std::string(kVersion);

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<OverflowError>(m, "OverflowError", PyExc_OverflowError);
    py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_RuntimeError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<cli::ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<cli::ValidationError>(m, "ValidationError", PyExc_ValueError);

    py::class_<MoleculeSpec>(m, "MoleculeSpec")
        .def(py::init<>())
        .def(py::init([](double De, double re, double D, double b, double alpha, double mu, double hbar) {
                 MoleculeSpec s;
                 s.De = De;
                 s.re = re;
                 s.D = D;
                 s.b = b;
                 s.alpha = alpha;
                 s.mu = mu;
                 s.hbar = hbar;
                 s.validate();
                 return s;
             }),
             py::arg("De"), py::arg("re"), py::arg("D"), py::arg("b"), py::arg("alpha"), py::arg("mu") = 1.0,
             py::arg("hbar") = 1.0)
        .def_readwrite("name", &MoleculeSpec::name)
        .def_readwrite("mu", &MoleculeSpec::mu)
        .def_readwrite("hbar", &MoleculeSpec::hbar)
        .def_readwrite("De", &MoleculeSpec::De)
        .def_readwrite("re", &MoleculeSpec::re)
        .def_readwrite("D", &MoleculeSpec::D)
        .def_readwrite("b", &MoleculeSpec::b)
        .def_readwrite("alpha", &MoleculeSpec::alpha)
        .def_readwrite("k_boltz", &MoleculeSpec::k_boltz)
        .def("validate", &MoleculeSpec::validate);

    py::class_<ThermoCoeffs>(m, "ThermoCoeffs")
        .def_readonly("Q1", &ThermoCoeffs::Q1)
        .def_readonly("Q2", &ThermoCoeffs::Q2)
        .def_readonly("Q3", &ThermoCoeffs::Q3)
        .def_readonly("Delta", &ThermoCoeffs::Delta)
        .def_readonly("n_max", &ThermoCoeffs::n_max)
        .def_readonly("interior", &ThermoCoeffs::interior);

    m.def("potential", &potential, py::arg("r"), py::arg("spec"));
    m.def("effective_potential", py::overload_cast<double, const MoleculeSpec&, int>(&effective_potential_approx),
          py::arg("r"), py::arg("spec"), py::arg("ell") = 0);
    m.def(
        "energy", [](int n, int ell, const MoleculeSpec& spec) { return energy({n, ell}, spec); }, py::arg("n"),
        py::arg("ell"), py::arg("spec"));
    m.def(
        "nu_root",
        [](int n, int ell, const MoleculeSpec& spec) { return nu_condition_root(n, map_dimensionless(spec, ell)); },
        py::arg("n"), py::arg("ell"), py::arg("spec"));
    m.def("thermo_coefficients", &thermo_coefficients, py::arg("spec"), py::arg("ell") = 0);

    m.def(
        "wavefunction",
        [](const std::vector<double>& r, int n, int ell, const MoleculeSpec& spec) {
            const RadialState st({n, ell}, spec);
            std::vector<double> out;
            out.reserve(r.size());
            for (double x : r) out.push_back(st(x));
            return out;
        },
        py::arg("r"), py::arg("n"), py::arg("ell"), py::arg("spec"));

    py::class_<ThermoPoint>(m, "ThermoPoint")
        .def_readonly("beta", &ThermoPoint::beta)
        .def_readonly("lam", &ThermoPoint::lam)
        .def_readonly("Z", &ThermoPoint::Z)
        .def_readonly("U", &ThermoPoint::U)
        .def_readonly("C", &ThermoPoint::C)
        .def_readonly("S", &ThermoPoint::S)
        .def_readonly("F", &ThermoPoint::F);

    m.def(
        "thermo",
        [](double beta, const ThermoCoeffs& c, const std::string& path, std::optional<double> lam,
           double k_boltz) {
            switch (parse_thermo_path(path)) {
                case ThermoPath::Direct:
                    return thermo_direct(beta, c, k_boltz);
                case ThermoPath::Integral:
                    return thermo_integral(beta, c, k_boltz);
                case ThermoPath::Closed:
                    break;
            }
            return thermo_closed(beta, c, lam.value_or(c.n_max), k_boltz);
        },
        py::arg("beta"), py::arg("coeffs"), py::arg("path") = "direct", py::arg("lam") = py::none(),
        py::arg("k_boltz") = 1.0);

    py::class_<Check>(m, "Check")
        .def_readonly("name", &Check::name)
        .def_readonly("hard", &Check::hard)
        .def_readonly("passed", &Check::passed)
        .def_readonly("measured", &Check::measured)
        .def_readonly("threshold", &Check::threshold)
        .def_readonly("detail", &Check::detail);

    // Runs one CLI command on config text; returns (exit_code, stdout, stderr).
    m.def(
        "run",
        [](const std::string& command, const std::string& config_text, const std::string& format, bool dry_run) {
            cli::Invocation inv;
            inv.command = command;
            inv.config_text = config_text;
            inv.format = cli::parse_format(format);
            inv.dry_run = dry_run;
            inv.out = "-";
            std::ostringstream out, err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = cli::run(inv, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("command"), py::arg("config_text"), py::arg("format") = "csv", py::arg("dry_run") = false);
}
