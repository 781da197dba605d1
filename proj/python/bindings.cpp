#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "clfbl/derivatives.hpp"
#include "clfbl/errors.hpp"
#include "clfbl/experiments.hpp"
#include "clfbl/optimizer.hpp"
#include "clfbl/scenario.hpp"
#include "clfbl/validate.hpp"

namespace py = pybind11;
using namespace clfbl;

PYBIND11_MODULE(_clfbl, m) {
    m.doc() = "Closed-loop finite-blocklength reliability model, optimizer and experiments";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);
    py::register_exception<ModelConsistencyError>(m, "ModelConsistencyError", PyExc_RuntimeError);

    py::class_<SystemConfig>(m, "SystemConfig")
        .def(py::init<>())
        .def_readwrite("payload_bits", &SystemConfig::payload_bits)
        .def_readwrite("sample_rate", &SystemConfig::sample_rate)
        .def_readwrite("bits_per_symbol", &SystemConfig::bits_per_symbol)
        .def_readwrite("bandwidth", &SystemConfig::bandwidth)
        .def_readwrite("max_blocklength", &SystemConfig::max_blocklength)
        .def_readwrite("frame_length", &SystemConfig::frame_length)
        .def_readwrite("energy_budget", &SystemConfig::energy_budget)
        .def_readwrite("dl_power", &SystemConfig::dl_power)
        .def_readwrite("noise_power", &SystemConfig::noise_power)
        .def_readwrite("ul_gain", &SystemConfig::ul_gain)
        .def_readwrite("dl_gain", &SystemConfig::dl_gain)
        .def_readwrite("max_error", &SystemConfig::max_error)
        .def("validate", &SystemConfig::validate)
        .def("with_noise", &SystemConfig::with_noise, py::arg("noise"));

    m.def("table1", [] { return preset_scenario("table1").config; }, "Reference preset (table1) with N = 3 mW");
    m.def("load_scenario", [](const std::string& path) { return load_scenario(path).config; }, py::arg("path"));
    m.def("parse_scenario", [](const std::string& text) { return parse_scenario(text).config; }, py::arg("text"));

    m.def("q_function", &q_function, py::arg("x"));
    m.def("log_q_function", &log_q_function, py::arg("x"));
    m.def("fbl_error_rate", &fbl_error_rate, py::arg("n"), py::arg("gamma"), py::arg("payload_bits"),
          py::arg("bandwidth") = 1.0);
    m.def("log_fbl_error_rate", &log_fbl_error_rate, py::arg("n"), py::arg("gamma"), py::arg("payload_bits"),
          py::arg("bandwidth") = 1.0);

    py::class_<DomainBounds>(m, "DomainBounds")
        .def_readonly("n_lo", &DomainBounds::n_lo)
        .def_readonly("n_hi", &DomainBounds::n_hi)
        .def_readonly("eta", &DomainBounds::eta)
        .def_property_readonly("binding_hi", [](const DomainBounds& d) { return to_string(d.binding_hi); })
        .def_readonly("empty", &DomainBounds::empty);
    m.def("feasible_domain", &feasible_domain, py::arg("cfg"));
    m.def("energy_snr_product", &energy_snr_product, py::arg("cfg"));
    m.def("ul_power_of_blocklength", &ul_power_of_blocklength, py::arg("cfg"), py::arg("n_ul"));

    m.def(
        "loop_errors",
        [](const SystemConfig& cfg, double n_ul) {
            const LoopState s = loop_state(cfg, n_ul);
            py::dict d;
            d["eps_ul"] = s.ul.eps;
            d["eps_dl"] = s.dl.eps;
            d["eps_cl"] = s.eps_cl;
            d["log_eps_ul"] = s.ul.log_eps;
            d["log_eps_dl"] = s.dl.log_eps;
            d["log_eps_cl"] = s.log_eps_cl;
            return d;
        },
        py::arg("cfg"), py::arg("n_ul"));

    m.def("delta_ul", &delta_ul, py::arg("gamma"), py::arg("bandwidth") = 1.0);
    m.def("d_eps_ul_dn", &d_eps_ul_dn, py::arg("cfg"), py::arg("n_ul"));
    m.def("d_eps_dl_dn", &d_eps_dl_dn, py::arg("cfg"), py::arg("n_ul"));
    m.def("d_eps_cl_dn", &d_eps_cl_dn, py::arg("cfg"), py::arg("n_ul"));
    m.def(
        "d_eps_cl_dn_sign", [](const SystemConfig& cfg, double n) { return d_eps_cl_dn_scaled(cfg, n).sign; },
        py::arg("cfg"), py::arg("n_ul"));

    py::class_<SolveResult>(m, "SolveResult")
        .def_property_readonly("status", [](const SolveResult& r) { return to_string(r.status); })
        .def_readonly("domain", &SolveResult::domain)
        .def_readonly("n_ul_cont", &SolveResult::n_ul_cont)
        .def_readonly("n_ul", &SolveResult::n_ul)
        .def_readonly("n_dl", &SolveResult::n_dl)
        .def_readonly("p_ul", &SolveResult::p_ul)
        .def_readonly("eps_ul", &SolveResult::eps_ul)
        .def_readonly("eps_dl", &SolveResult::eps_dl)
        .def_readonly("eps_cl", &SolveResult::eps_cl)
        .def_readonly("r_loop", &SolveResult::r_loop)
        .def_property_readonly("case", [](const SolveResult& r) { return to_string(r.optimum_case); })
        .def_readonly("feasible", &SolveResult::feasible)
        .def_readonly("iterations", &SolveResult::iterations)
        .def_readonly("diagnostics", &SolveResult::diagnostics)
        .def("solved", &SolveResult::solved);
    m.def("solve", &solve, py::arg("cfg"));
    m.def("grid_search_oracle", &grid_search_oracle, py::arg("cfg"));

    py::class_<GridSample>(m, "GridSample")
        .def_readonly("n_ul", &GridSample::n_ul)
        .def_readonly("eps_ul", &GridSample::eps_ul)
        .def_readonly("eps_dl", &GridSample::eps_dl)
        .def_readonly("eps_cl", &GridSample::eps_cl)
        .def_readonly("d_eps_cl", &GridSample::d_eps_cl)
        .def_readonly("sign_d_eps_cl", &GridSample::sign_d_eps_cl)
        .def_readonly("d2_eps_cl", &GridSample::d2_eps_cl)
        .def_readonly("sign_d2_eps_cl", &GridSample::sign_d2_eps_cl);

    py::class_<SweepRecord>(m, "SweepRecord")
        .def_readonly("noise", &SweepRecord::noise)
        .def_readonly("domain", &SweepRecord::domain)
        .def_readonly("result", &SweepRecord::result)
        .def_property_readonly("grid", &SweepRecord::grid)
        .def_property_readonly("convex", [](const SweepRecord& r) { return r.scan.count(ViolationKind::ClNotConvex) == 0; });

    m.def("noise_grid", py::overload_cast<double, std::size_t>(&noise_grid), py::arg("dl_power"),
          py::arg("n_points"));
    m.def("run_case_study", &run_case_study, py::arg("cfg"), py::arg("grid_points") = kCaseStudyPoints,
          py::call_guard<py::gil_scoped_release>());
    m.def("sweep_noise", py::overload_cast<const SystemConfig&, std::size_t, std::size_t>(&sweep_noise),
          py::arg("cfg"), py::arg("n_points") = kSweepNoisePoints, py::arg("grid_points") = kSweepGridPoints,
          py::call_guard<py::gil_scoped_release>());

    py::class_<MonteCarloEstimate>(m, "MonteCarloEstimate")
        .def_readonly("trials", &MonteCarloEstimate::trials)
        .def_readonly("successes", &MonteCarloEstimate::successes)
        .def_readonly("r_loop", &MonteCarloEstimate::r_loop)
        .def_readonly("ci_lo", &MonteCarloEstimate::ci_lo)
        .def_readonly("ci_hi", &MonteCarloEstimate::ci_hi)
        .def_readonly("seed", &MonteCarloEstimate::seed)
        .def_readonly("generator", &MonteCarloEstimate::generator)
        .def("contains", &MonteCarloEstimate::contains);
    m.def("simulate_loop", &simulate_loop, py::arg("eps_ul"), py::arg("eps_dl"), py::arg("trials"), py::arg("seed"),
          py::call_guard<py::gil_scoped_release>());
    m.def("monte_carlo_validate", &monte_carlo_validate, py::arg("cfg"), py::arg("n_ul"), py::arg("trials"),
          py::arg("seed"), py::call_guard<py::gil_scoped_release>());
}
