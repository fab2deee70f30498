#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gaplab/gap.hpp"
#include "gaplab/geometry.hpp"
#include "gaplab/potential.hpp"
#include "gaplab/schrodinger_operator.hpp"

namespace gaplab {

/**
 * One experiment. JSON form:
 *
 *   {
 *     "domain": {"kind": "interval", "lower": 0, "upper": 1, "resolution": 513},
 *     "potential": {"family": "harmonic", "c": 2},
 *     "bc": "dirichlet",
 *     "tol": 1e-10, "max_iter": 10000, "seed": 24029, "delta": 1e-6,
 *     "checks": ["bound_universal"], "epsilon": 1, "beta": 1
 *   }
 *
 * Domain keys: kind, lower, upper (scalars for intervals, pairs for rectangles),
 * radius, resolution (int or [nx, ny], [rings, angular] for disks) or h
 * (lattices only), boundary_offset. Potential keys: family, c, center, a4, a2,
 * slope, seed, amplitude, wavenumber. Unknown keys are rejected.
 */
struct RunConfig {
    DomainSpec domain;
    PotentialSpec potential;
    BoundaryCondition bc = BoundaryCondition::dirichlet;
    double tol = 1e-10;
    int max_iter = 10000;
    std::uint64_t seed = 24029;
    double delta = 1e-6;
    /// Empty selects every check.
    std::vector<std::string> checks;
    double epsilon = 1.0;
    double beta = 1.0;
    /// NaN selects the default two-spacing offset.
    double boundary_offset = std::numeric_limits<double>::quiet_NaN();
    /// Normalized JSON echo of the parsed document.
    std::string source;
};

/// Throws ConfigError on malformed documents. GAPLAB_SEED in the environment overrides seed.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

struct PhaseTimings {
    double assemble = 0.0;
    double solve = 0.0;
    double groundstate = 0.0;
    double gap = 0.0;
    double total = 0.0;
};

struct SpectrumSummary {
    std::size_t dofs = 0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double residual1 = 0.0;
    double residual2 = 0.0;
    int iterations = 0;
    bool near_degenerate = false;
};

struct Diagnostics {
    double h = 0.0;
    double diameter = 0.0;
    double c = 0.0;
    double sup_laplacian_v = 0.0;
    bool metadata_estimated = false;
    double hess_min = 0.0;
    double hess_diag_min = 0.0;
    double identity_residual = 0.0;
    double quotient_residual = 0.0;
    std::optional<double> boundary_derivative;
    double tol_check = 0.0;
    double boundary_offset = 0.0;
};

struct RunReport {
    RunConfig config;
    SpectrumSummary spectrum;
    Diagnostics diagnostics;
    GapReport gap;
    PhaseTimings timings;
    CheckStatus status = CheckStatus::pass;
};

/// Assemble, solve, log ground state, gap checks. Module errors propagate.
RunReport run(const RunConfig& config);

/// Exit code for a finished run: 0 pass, 1 failed blocking check.
int exit_code(const RunReport& report);

struct SweepRow {
    double value = 0.0;
    std::optional<RunReport> report;
    std::string error_type;
    std::string error;
};

/**
 * One run per value, rows ordered by value. Axis "c" sets potential.c, "d"
 * rescales the domain to diameter d at fixed resolution, and a dotted path
 * such as "potential.a2" or "domain.resolution" sets that key.
 */
std::vector<SweepRow> sweep(const RunConfig& base, const std::string& axis, std::vector<double> values);

struct ConvergenceLevel {
    double h = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double error1 = 0.0;
    double error2 = 0.0;
    double identity_residual = 0.0;
    double quotient_residual = 0.0;
    double boundary_derivative = std::numeric_limits<double>::quiet_NaN();
};

struct ConvergenceTable {
    std::vector<ConvergenceLevel> levels;
    double boundary_offset = 0.0;
    /// Richardson limits from the two finest levels.
    double lambda1_limit = 0.0;
    double lambda2_limit = 0.0;
    /// Orders between consecutive levels; eigenvalue orders use successive differences of three levels.
    std::vector<double> order_lambda1;
    std::vector<double> order_lambda2;
    std::vector<double> order_identity;
    std::vector<double> order_quotient;
    std::vector<double> order_boundary_derivative;
};

/// Halves h per level starting from the config grid; the mask offset is frozen at the coarsest default.
ConvergenceTable converge(const RunConfig& base, int levels);

struct OracleComparison {
    std::size_t dofs = 0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double oracle1 = 0.0;
    double oracle2 = 0.0;
    /// |iterative - oracle| / max(1, |oracle|).
    double deviation1 = 0.0;
    double deviation2 = 0.0;
    bool agree = false;
};

/// Iterative versus dense eigenvalues; agreement within 1e-8 relative.
OracleComparison oracle(const RunConfig& config);

/// Bit-exact CSV header line (no trailing newline).
const std::string& csv_header();
std::string csv_row(const std::string& run_id, const RunReport& report);
std::string csv_error_row(const std::string& run_id, const RunConfig& config, const std::string& error);

std::string to_json(const RunReport& report, bool pretty = true);
std::string to_json(const std::vector<SweepRow>& rows, const std::string& axis, bool pretty = true);
std::string to_json(const ConvergenceTable& table, bool pretty = true);
std::string to_json(const OracleComparison& comparison, bool pretty = true);

/// Structured error document for exit code 2.
std::string error_json(const std::string& type, const std::string& message);

/// Class name of a gaplab exception for error reports.
std::string error_type(const std::exception& e);

}  // namespace gaplab
