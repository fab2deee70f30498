#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gaplab/error.hpp"
#include "gaplab/gap.hpp"
#include "gaplab/runner.hpp"
#include "gaplab/spectrum.hpp"

namespace py = pybind11;
using namespace gaplab;

namespace {

py::dict solve(const std::string& config_json) {
    const RunConfig c = parse_config(config_json);
    const DomainGrid grid = build_grid(c.domain);
    const PotentialField field = sample(c.potential, grid);
    const DiscreteOperator op = assemble(grid, field, c.bc);
    SpectrumResult s;
    {
        py::gil_scoped_release release;
        s = smallest_two(op, c.tol, c.max_iter, c.seed);
    }
    std::vector<std::array<double, 2>> points(grid.points().begin(), grid.points().end());
    py::dict out;
    out["lambda1"] = s.lambda1;
    out["lambda2"] = s.lambda2;
    out["residual1"] = s.residual1;
    out["residual2"] = s.residual2;
    out["iterations"] = s.iterations;
    out["points"] = points;
    out["u1"] = s.nodal1;
    out["u2"] = s.nodal2;
    out["potential"] = field.values;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fundamental gap experiments for -Laplacian + V";

    auto config_error = py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    auto solver_error = py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<HypothesisFailed>(m, "HypothesisFailed", PyExc_RuntimeError);
    (void)config_error;
    (void)solver_error;

    m.def(
        "run_json",
        [](const std::string& config) {
            RunReport r;
            {
                py::gil_scoped_release release;
                r = run(parse_config(config));
            }
            return to_json(r, false);
        },
        py::arg("config"), "Run one configuration; returns the JSON report.");
    m.def(
        "sweep_json",
        [](const std::string& config, const std::string& axis, std::vector<double> values) {
            const auto rows = sweep(parse_config(config), axis, std::move(values));
            std::string csv = csv_header();
            for (std::size_t i = 0; i < rows.size(); ++i) {
                csv += "\n" + (rows[i].report ? csv_row(std::to_string(i), *rows[i].report)
                                               : csv_error_row(std::to_string(i), parse_config(config), rows[i].error));
            }
            return std::make_pair(to_json(rows, axis, false), csv);
        },
        py::arg("config"), py::arg("axis"), py::arg("values"), "Sweep a parameter; returns (JSON, CSV).");
    m.def(
        "converge_json", [](const std::string& config, int levels) { return to_json(converge(parse_config(config), levels), false); },
        py::arg("config"), py::arg("levels"), "Grid refinement study; returns the JSON table.");
    m.def(
        "oracle_json", [](const std::string& config) { return to_json(oracle(parse_config(config)), false); },
        py::arg("config"), "Iterative versus dense eigenvalues; returns JSON.");
    m.def("solve", &solve, py::arg("config"), "Two lowest eigenpairs as nodal values.");
    m.def("csv_header", &csv_header);
    m.def("theta", &theta, py::arg("beta"));
    m.def("beta_bound", &beta_bound, py::arg("c"), py::arg("d"), "Returns (bound, beta_star).");
    m.def("deficit_bound", &deficit_bound, py::arg("a"), py::arg("d"));
}
