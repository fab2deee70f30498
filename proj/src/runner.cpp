#include "gaplab/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "gaplab/error.hpp"
#include "gaplab/groundstate.hpp"
#include "gaplab/spectrum.hpp"
#include "json.hpp"

namespace gaplab {

using json = nlohmann::ordered_json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

double number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError("missing key '" + key + "' in " + where);
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError("'" + key + "' in " + where + " must be a number");
    return v.get<double>();
}

double number_or(const json& obj, const std::string& key, double fallback, const std::string& where) {
    return obj.contains(key) ? number(obj, key, where) : fallback;
}

long long integer(const json& v, const std::string& key) {
    if (v.is_number_integer()) return v.get<long long>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9e15) return static_cast<long long>(d);
    }
    throw ConfigError("'" + key + "' must be an integer");
}

Point pair_or_scalar(const json& v, const std::string& key) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && (v.size() == 1 || v.size() == 2) &&
        std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number(); })) {
        return {v[0].get<double>(), v.size() == 2 ? v[1].get<double>() : 0.0};
    }
    throw ConfigError("'" + key + "' must be a number or a list of one or two numbers");
}

Point pair(const json& v, const std::string& key) {
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    throw ConfigError("'" + key + "' must be a list of two numbers");
}

int nodes_for(double length, double h, const std::string& axis) {
    if (!(h > 0.0)) throw ConfigError("domain.h must be positive");
    const double cells = length / h;
    const double rounded = std::round(cells);
    if (!(rounded >= 1.0) || std::abs(cells - rounded) > 1e-9 * std::max(1.0, rounded)) {
        throw ConfigError("domain.h does not divide the " + axis + " extent");
    }
    return static_cast<int>(rounded) + 1;
}

DomainSpec parse_domain(json& d, double& boundary_offset) {
    if (!d.is_object()) throw ConfigError("'domain' must be an object");
    if (!d.contains("kind") || !d["kind"].is_string()) throw ConfigError("domain.kind must be a string");
    const DomainKind kind = domain_kind_from_string(d["kind"].get<std::string>());
    boundary_offset = kNaN;
    if (d.contains("boundary_offset")) {
        boundary_offset = number(d, "boundary_offset", "domain");
        if (!(boundary_offset >= 0.0)) throw ConfigError("domain.boundary_offset must be non-negative");
    }
    if (d.contains("resolution") && d.contains("h")) throw ConfigError("domain takes resolution or h, not both");

    switch (kind) {
        case DomainKind::interval: {
            reject_unknown(d, {"kind", "lower", "upper", "resolution", "h", "boundary_offset"}, "domain");
            const double a = d.contains("lower") ? pair_or_scalar(d["lower"], "domain.lower")[0] : 0.0;
            const double b = d.contains("upper") ? pair_or_scalar(d["upper"], "domain.upper")[0] : 1.0;
            int n = 0;
            if (d.contains("h")) {
                if (!(b > a)) throw ConfigError("degenerate extent: upper must exceed lower");
                n = nodes_for(b - a, number(d, "h", "domain"), "x");
            } else if (d.contains("resolution")) {
                n = static_cast<int>(integer(d["resolution"], "domain.resolution"));
            } else {
                throw ConfigError("domain needs resolution or h");
            }
            d.erase("h");
            d["lower"] = a;
            d["upper"] = b;
            d["resolution"] = n;
            return DomainSpec::interval(a, b, n);
        }
        case DomainKind::rectangle: {
            reject_unknown(d, {"kind", "lower", "upper", "resolution", "h", "boundary_offset"}, "domain");
            const Point lo = d.contains("lower") ? pair(d["lower"], "domain.lower") : Point{0.0, 0.0};
            const Point hi = d.contains("upper") ? pair(d["upper"], "domain.upper") : Point{1.0, 1.0};
            std::array<int, 2> n{};
            if (d.contains("h")) {
                if (!(hi[0] > lo[0] && hi[1] > lo[1])) throw ConfigError("degenerate extent: upper must exceed lower");
                const double h = number(d, "h", "domain");
                n = {nodes_for(hi[0] - lo[0], h, "x"), nodes_for(hi[1] - lo[1], h, "y")};
            } else if (d.contains("resolution")) {
                const auto& r = d["resolution"];
                if (r.is_array()) {
                    if (r.size() != 2) throw ConfigError("domain.resolution must be an integer or two integers");
                    n = {static_cast<int>(integer(r[0], "domain.resolution")),
                         static_cast<int>(integer(r[1], "domain.resolution"))};
                } else {
                    const int m = static_cast<int>(integer(r, "domain.resolution"));
                    n = {m, m};
                }
            } else {
                throw ConfigError("domain needs resolution or h");
            }
            d.erase("h");
            d["lower"] = {lo[0], lo[1]};
            d["upper"] = {hi[0], hi[1]};
            d["resolution"] = {n[0], n[1]};
            return DomainSpec::rectangle(lo, hi, n[0], n[1]);
        }
        case DomainKind::disk: {
            reject_unknown(d, {"kind", "radius", "resolution", "boundary_offset"}, "domain");
            const double radius = number_or(d, "radius", 1.0, "domain");
            if (!d.contains("resolution")) throw ConfigError("disk domain needs resolution [rings, angular]");
            const auto& r = d["resolution"];
            if (!r.is_array() || r.size() != 2) throw ConfigError("disk resolution must be [rings, angular]");
            const int rings = static_cast<int>(integer(r[0], "domain.resolution"));
            const int angular = static_cast<int>(integer(r[1], "domain.resolution"));
            d["radius"] = radius;
            return DomainSpec::disk(radius, rings, angular);
        }
    }
    throw ConfigError("unknown domain kind");
}

PotentialSpec parse_potential(const json& p) {
    if (!p.is_object()) throw ConfigError("'potential' must be an object");
    if (!p.contains("family") || !p["family"].is_string()) throw ConfigError("potential.family must be a string");
    const PotentialFamily family = potential_family_from_string(p["family"].get<std::string>());
    const std::string where = "potential";
    PotentialSpec spec;
    switch (family) {
        case PotentialFamily::zero:
            reject_unknown(p, {"family"}, where);
            spec = PotentialSpec::zero();
            break;
        case PotentialFamily::harmonic:
            reject_unknown(p, {"family", "c"}, where);
            spec = PotentialSpec::harmonic(number(p, "c", where));
            break;
        case PotentialFamily::shifted_harmonic:
            reject_unknown(p, {"family", "c", "center"}, where);
            if (!p.contains("center")) throw ConfigError("missing key 'center' in potential");
            spec = PotentialSpec::shifted_harmonic(number(p, "c", where), pair_or_scalar(p["center"], "center"));
            break;
        case PotentialFamily::double_well:
            reject_unknown(p, {"family", "a4", "a2"}, where);
            spec = PotentialSpec::double_well(number(p, "a4", where), number(p, "a2", where));
            break;
        case PotentialFamily::tilted:
            reject_unknown(p, {"family", "slope"}, where);
            if (!p.contains("slope")) throw ConfigError("missing key 'slope' in potential");
            spec = PotentialSpec::tilted(pair_or_scalar(p["slope"], "slope"));
            break;
        case PotentialFamily::random_smooth: {
            reject_unknown(p, {"family", "seed", "amplitude", "wavenumber"}, where);
            if (!p.contains("seed")) throw ConfigError("missing key 'seed' in potential");
            const long long seed = integer(p["seed"], "potential.seed");
            if (seed < 0) throw ConfigError("potential.seed must be non-negative");
            spec = PotentialSpec::random_smooth(static_cast<std::uint64_t>(seed), number(p, "amplitude", where),
                                                number(p, "wavenumber", where));
            break;
        }
    }
    validate(spec);
    return spec;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json opt(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }

json bound_json(const BoundValue& b) {
    return {{"applicable", b.applicable}, {"advisory", b.advisory}, {"value", num(b.value)}, {"margin", num(b.margin)}};
}

json orders_json(const std::vector<double>& v) {
    json out = json::array();
    for (double x : v) out.push_back(num(x));
    return out;
}

std::string dump(const json& j, bool pretty) { return pretty ? j.dump(2) : j.dump(); }

double order(double coarse, double fine) {
    if (!(coarse > 0.0) || !(fine > 0.0)) return kNaN;
    return std::log2(coarse / fine);
}

json config_json(const RunConfig& config) {
    try {
        return json::parse(config.source);
    } catch (const json::exception&) {
        return json::object();
    }
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown(doc, {"domain", "potential", "bc", "tol", "max_iter", "seed", "delta", "checks", "epsilon", "beta"},
                   "config");

    RunConfig c;
    if (!doc.contains("domain")) throw ConfigError("missing key 'domain' in config");
    if (!doc.contains("potential")) throw ConfigError("missing key 'potential' in config");
    c.domain = parse_domain(doc["domain"], c.boundary_offset);
    c.potential = parse_potential(doc["potential"]);
    if (doc.contains("bc")) {
        if (!doc["bc"].is_string()) throw ConfigError("'bc' must be a string");
        c.bc = boundary_condition_from_string(doc["bc"].get<std::string>());
    }
    c.tol = number_or(doc, "tol", c.tol, "config");
    if (!(c.tol > 0.0)) throw ConfigError("tol must be positive");
    if (doc.contains("max_iter")) c.max_iter = static_cast<int>(integer(doc["max_iter"], "max_iter"));
    if (c.max_iter < 1) throw ConfigError("max_iter must be at least 1");
    if (doc.contains("seed")) {
        const long long s = integer(doc["seed"], "seed");
        if (s < 0) throw ConfigError("seed must be non-negative");
        c.seed = static_cast<std::uint64_t>(s);
    }
    if (const char* env = std::getenv("GAPLAB_SEED"); env && *env) {
        char* end = nullptr;
        const unsigned long long s = std::strtoull(env, &end, 10);
        if (*end != '\0' || env[0] == '-') throw ConfigError("GAPLAB_SEED must be a non-negative integer");
        c.seed = s;
    }
    c.delta = number_or(doc, "delta", c.delta, "config");
    if (!(c.delta > 0.0 && c.delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
    if (doc.contains("checks")) {
        const auto& list = doc["checks"];
        if (!list.is_array()) throw ConfigError("'checks' must be a list of names");
        const auto& known = check_names();
        for (const auto& name : list) {
            if (!name.is_string()) throw ConfigError("'checks' must be a list of names");
            const auto s = name.get<std::string>();
            if (std::find(known.begin(), known.end(), s) == known.end()) {
                throw ConfigError("unknown check '" + s + "'");
            }
            c.checks.push_back(s);
        }
    }
    c.epsilon = number_or(doc, "epsilon", c.epsilon, "config");
    if (!(c.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    c.beta = number_or(doc, "beta", c.beta, "config");
    if (!(c.beta > 0.0 && c.beta < std::sqrt(2.0))) throw ConfigError("beta must lie in (0, sqrt 2)");

    doc["bc"] = to_string(c.bc);
    doc["tol"] = c.tol;
    doc["max_iter"] = c.max_iter;
    doc["seed"] = c.seed;
    doc["delta"] = c.delta;
    doc["epsilon"] = c.epsilon;
    doc["beta"] = c.beta;
    c.source = doc.dump();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

RunReport run(const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    RunReport report;
    report.config = config;

    auto phase = std::chrono::steady_clock::now();
    const DomainGrid grid = build_grid(config.domain);
    const PotentialField field = sample(config.potential, grid);
    const DiscreteOperator op = assemble(grid, field, config.bc);
    report.timings.assemble = seconds_since(phase);

    phase = std::chrono::steady_clock::now();
    const SpectrumResult spectrum = smallest_two(op, config.tol, config.max_iter, config.seed);
    report.timings.solve = seconds_since(phase);
    report.spectrum = {op.dofs(),           spectrum.lambda1,    spectrum.lambda2,       spectrum.residual1,
                       spectrum.residual2, spectrum.iterations, spectrum.near_degenerate};

    phase = std::chrono::steady_clock::now();
    const GroundStateLog gsl = log_ground_state(spectrum, grid, {config.delta, config.boundary_offset});
    const HessianExtrema he = hessian_extrema(gsl);
    const DomainMetrics m = metrics(grid);
    const bool neumann = config.bc == BoundaryCondition::neumann;
    const bool disk = grid.kind() == DomainKind::disk;

    ReportInputs in;
    in.bc = config.bc;
    in.h = grid.h_max();
    in.tol_check = check_tolerance(grid);
    in.lambda1 = spectrum.lambda1;
    in.lambda2 = spectrum.lambda2;
    in.residual1 = spectrum.residual1;
    in.residual2 = spectrum.residual2;
    in.solver_tol = config.tol;
    in.near_degenerate = spectrum.near_degenerate;
    in.c = field.hessian_lb;
    in.hessian = he;
    in.identity_residual = phi_identity_residual(gsl, field, spectrum.lambda1);
    if (neumann) in.laplacian = laplacian_bounds_check(gsl, grid, field, m, spectrum.lambda1);
    if (neumann && disk) {
        in.polar = polar_diagnostics(gsl, grid, field, spectrum.lambda1);
        try {
            in.growth = growth_check(gsl, grid, field);
        } catch (const HypothesisFailed& e) {
            in.growth_skip_reason = e.what();
        }
    }
    in.cutoff = cutoff_diagnostic(gsl, grid, field, spectrum.lambda1, config.bc);
    report.timings.groundstate = seconds_since(phase);

    phase = std::chrono::steady_clock::now();
    const double gap = spectrum.gap();
    const QuotientField q = quotient(spectrum, grid, config.bc, config.delta);
    in.boundary_derivative = boundary_derivative_check(q, grid);
    in.quotient_residual = quotient_residual(q, gsl, grid, gap);
    in.gradient = proof_gradient_checks(q, gsl, grid, gap, field.hessian_lb, he.hess_min, config.beta, config.epsilon);
    in.bounds = gap_lower_bounds(m, field.hessian_lb, he.hess_min, gap, config.bc);
    GapReport gr = assemble_report(in);
    if (!config.checks.empty()) {
        std::erase_if(gr.checks, [&](const CheckResult& r) {
            return std::find(config.checks.begin(), config.checks.end(), r.name) == config.checks.end();
        });
        gr.status = CheckStatus::pass;
        for (const auto& r : gr.checks) {
            if (r.blocking && r.status == CheckStatus::fail) gr.status = CheckStatus::fail;
        }
    }
    report.timings.gap = seconds_since(phase);

    report.diagnostics = {grid.h_max(),       m.diameter,     field.hessian_lb, field.sup_laplacian,
                          field.metadata_estimated, he.hess_min, he.hess_diag_min, *in.identity_residual,
                          *in.quotient_residual,       in.boundary_derivative,      in.tol_check,     gsl.boundary_offset};
    report.status = gr.status;
    report.gap = std::move(gr);
    report.timings.total = seconds_since(start);
    return report;
}

int exit_code(const RunReport& report) { return report.status == CheckStatus::fail ? 1 : 0; }

std::vector<SweepRow> sweep(const RunConfig& base, const std::string& axis, std::vector<double> values) {
    static const std::set<std::string> top{"tol", "max_iter", "seed", "delta", "epsilon", "beta"};
    static const std::set<std::string> integral{"resolution", "max_iter", "seed"};
    std::vector<std::string> path;
    if (axis == "c") {
        path = {"potential", "c"};
    } else if (axis != "d") {
        std::stringstream ss(axis);
        for (std::string part; std::getline(ss, part, '.');) path.push_back(part);
        const bool ok = !path.empty() && !path[0].empty() &&
                        ((path.size() == 1 && top.count(path[0])) ||
                         (path.size() >= 2 && (path[0] == "domain" || path[0] == "potential")));
        if (!ok) throw ConfigError("unknown sweep axis '" + axis + "'");
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw ConfigError("sweep values must be finite numbers");
    }
    std::stable_sort(values.begin(), values.end());

    const json source = config_json(base);
    std::vector<SweepRow> rows;
    for (double v : values) {
        SweepRow row;
        row.value = v;
        try {
            json doc = source;
            if (axis == "d") {
                json& d = doc["domain"];
                const double current = diameter(base.domain);
                if (!(v > 0.0)) throw ConfigError("sweep value for d must be positive");
                switch (base.domain.kind) {
                    case DomainKind::interval:
                        d["upper"] = base.domain.lower[0] + v;
                        break;
                    case DomainKind::rectangle: {
                        const double s = v / current;
                        d["upper"] = {base.domain.lower[0] + s * (base.domain.upper[0] - base.domain.lower[0]),
                                      base.domain.lower[1] + s * (base.domain.upper[1] - base.domain.lower[1])};
                        break;
                    }
                    case DomainKind::disk:
                        d["radius"] = 0.5 * v;
                        break;
                }
            } else {
                json* node = &doc;
                for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                    const auto& key = path[i];
                    if (node->is_array()) {
                        node = &node->at(std::stoul(key));
                    } else {
                        node = &(*node)[key];
                    }
                }
                const bool as_int = integral.count(path.back()) && v == std::floor(v);
                json value = as_int ? json(static_cast<long long>(v)) : json(v);
                if (node->is_array()) {
                    node->at(std::stoul(path.back())) = value;
                } else {
                    (*node)[path.back()] = value;
                }
            }
            row.report = run(parse_config(doc.dump()));
        } catch (const std::exception& e) {
            row.error_type = error_type(e);
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ConvergenceTable converge(const RunConfig& base, int levels) {
    if (levels < 2) throw ConfigError("converge needs at least 2 levels");
    ConvergenceTable table;
    table.boundary_offset = std::isnan(base.boundary_offset) ? default_boundary_offset(build_grid(base.domain))
                                                             : base.boundary_offset;
    for (int k = 0; k < levels; ++k) {
        RunConfig cfg = base;
        cfg.boundary_offset = table.boundary_offset;
        auto& r = cfg.domain.resolution;
        const int scale = 1 << k;
        if (cfg.domain.kind == DomainKind::disk) {
            r = {r[0] * scale, r[1] * scale};
        } else {
            r = {(r[0] - 1) * scale + 1, (r[1] - 1) * scale + 1};
        }
        const RunReport rep = run(cfg);
        ConvergenceLevel level;
        level.h = rep.diagnostics.h;
        level.lambda1 = rep.spectrum.lambda1;
        level.lambda2 = rep.spectrum.lambda2;
        level.identity_residual = rep.diagnostics.identity_residual;
        level.quotient_residual = rep.diagnostics.quotient_residual;
        level.boundary_derivative = rep.diagnostics.boundary_derivative.value_or(kNaN);
        table.levels.push_back(level);
    }
    const auto& fine = table.levels.back();
    const auto& coarse = table.levels[table.levels.size() - 2];
    table.lambda1_limit = (4.0 * fine.lambda1 - coarse.lambda1) / 3.0;
    table.lambda2_limit = (4.0 * fine.lambda2 - coarse.lambda2) / 3.0;
    for (auto& l : table.levels) {
        l.error1 = std::abs(l.lambda1 - table.lambda1_limit);
        l.error2 = std::abs(l.lambda2 - table.lambda2_limit);
    }
    const auto& L = table.levels;
    for (std::size_t k = 0; k + 2 < L.size(); ++k) {
        table.order_lambda1.push_back(
            order(std::abs(L[k].lambda1 - L[k + 1].lambda1), std::abs(L[k + 1].lambda1 - L[k + 2].lambda1)));
        table.order_lambda2.push_back(
            order(std::abs(L[k].lambda2 - L[k + 1].lambda2), std::abs(L[k + 1].lambda2 - L[k + 2].lambda2)));
    }
    for (std::size_t k = 0; k + 1 < L.size(); ++k) {
        table.order_identity.push_back(order(L[k].identity_residual, L[k + 1].identity_residual));
        table.order_quotient.push_back(order(L[k].quotient_residual, L[k + 1].quotient_residual));
        table.order_boundary_derivative.push_back(order(L[k].boundary_derivative, L[k + 1].boundary_derivative));
    }
    return table;
}

OracleComparison oracle(const RunConfig& config) {
    const DomainGrid grid = build_grid(config.domain);
    const PotentialField field = sample(config.potential, grid);
    const DiscreteOperator op = assemble(grid, field, config.bc);
    const std::vector<double> dense = dense_oracle(op);
    const SpectrumResult s = smallest_two(op, config.tol, config.max_iter, config.seed);
    OracleComparison out;
    out.dofs = op.dofs();
    out.lambda1 = s.lambda1;
    out.lambda2 = s.lambda2;
    out.oracle1 = dense[0];
    out.oracle2 = dense[1];
    out.deviation1 = std::abs(s.lambda1 - dense[0]) / std::max(1.0, std::abs(dense[0]));
    out.deviation2 = std::abs(s.lambda2 - dense[1]) / std::max(1.0, std::abs(dense[1]));
    out.agree = out.deviation1 <= 1e-8 && out.deviation2 <= 1e-8;
    return out;
}

const std::string& csv_header() {
    static const std::string header =
        "run_id,domain,bc,potential,c,d,lambda1,lambda2,gap,bound_universal,bound_thm1,beta_star,bound_thm32,"
        "a_measured,hess_min,res_eq15,res_eq21,lemma1_norm,status";
    return header;
}

std::string csv_row(const std::string& run_id, const RunReport& r) {
    const auto& b = r.gap.bounds;
    const auto& d = r.diagnostics;
    std::string row = run_id + "," + to_string(r.config.domain.kind) + "," + to_string(r.config.bc) + "," +
                      to_string(r.config.potential.family);
    for (double v : {d.c, d.diameter, r.spectrum.lambda1, r.spectrum.lambda2, r.gap.gap, b.universal.value,
                     b.beta.value, b.beta_star, b.deficit.value, b.a, d.hess_min, d.quotient_residual, d.identity_residual,
                     d.boundary_derivative.value_or(kNaN)}) {
        row += "," + fmt(v);
    }
    return row + "," + to_string(r.status);
}

std::string csv_error_row(const std::string& run_id, const RunConfig& config, const std::string&) {
    double d = kNaN;
    try {
        d = diameter(config.domain);
    } catch (const std::exception&) {
    }
    std::string row = run_id + "," + to_string(config.domain.kind) + "," + to_string(config.bc) + "," +
                      to_string(config.potential.family) + "," + fmt(kNaN) + "," + fmt(d);
    for (int i = 0; i < 12; ++i) row += "," + fmt(kNaN);
    return row + ",ERROR";
}

std::string to_json(const RunReport& r, bool pretty) {
    json checks = json::array();
    for (const auto& c : r.gap.checks) {
        checks.push_back({{"name", c.name},
                          {"status", to_string(c.status)},
                          {"blocking", c.blocking},
                          {"measured", num(c.measured)},
                          {"bound", num(c.bound)},
                          {"margin", num(c.margin)},
                          {"tolerance", num(c.tolerance)},
                          {"note", c.note}});
    }
    const auto& b = r.gap.bounds;
    json beta = bound_json(b.beta);
    beta["beta_star"] = num(b.beta_star);
    json deficit = bound_json(b.deficit);
    deficit["a"] = num(b.a);
    const auto& d = r.diagnostics;
    const json doc{
        {"config", config_json(r.config)},
        {"spectrum",
         {{"dofs", r.spectrum.dofs},
          {"lambda1", num(r.spectrum.lambda1)},
          {"lambda2", num(r.spectrum.lambda2)},
          {"gap", num(r.gap.gap)},
          {"residual1", num(r.spectrum.residual1)},
          {"residual2", num(r.spectrum.residual2)},
          {"iterations", r.spectrum.iterations},
          {"near_degenerate", r.spectrum.near_degenerate}}},
        {"diagnostics",
         {{"h", num(d.h)},
          {"diameter", num(d.diameter)},
          {"c", num(d.c)},
          {"sup_laplacian_v", num(d.sup_laplacian_v)},
          {"metadata_estimated", d.metadata_estimated},
          {"hess_min", num(d.hess_min)},
          {"hess_diag_min", num(d.hess_diag_min)},
          {"identity_residual", num(d.identity_residual)},
          {"quotient_residual", num(d.quotient_residual)},
          {"boundary_derivative", opt(d.boundary_derivative)},
          {"tol_check", num(d.tol_check)},
          {"boundary_offset", num(d.boundary_offset)}}},
        {"bounds", {{"gap", num(b.gap)}, {"universal", bound_json(b.universal)}, {"beta", beta}, {"deficit", deficit}}},
        {"checks", checks},
        {"timings",
         {{"assemble", r.timings.assemble},
          {"solve", r.timings.solve},
          {"groundstate", r.timings.groundstate},
          {"gap", r.timings.gap},
          {"total", r.timings.total}}},
        {"status", to_string(r.status)}};
    return dump(doc, pretty);
}

std::string to_json(const std::vector<SweepRow>& rows, const std::string& axis, bool pretty) {
    json out = json::array();
    for (const auto& row : rows) {
        json entry{{"value", row.value}};
        if (row.report) {
            entry["report"] = json::parse(to_json(*row.report, false));
            entry["status"] = to_string(row.report->status);
        } else {
            entry["status"] = "ERROR";
            entry["error"] = {{"type", row.error_type}, {"message", row.error}};
        }
        out.push_back(std::move(entry));
    }
    return dump(json{{"axis", axis}, {"rows", out}}, pretty);
}

std::string to_json(const ConvergenceTable& t, bool pretty) {
    json levels = json::array();
    for (const auto& l : t.levels) {
        levels.push_back({{"h", num(l.h)},
                          {"lambda1", num(l.lambda1)},
                          {"lambda2", num(l.lambda2)},
                          {"error1", num(l.error1)},
                          {"error2", num(l.error2)},
                          {"identity_residual", num(l.identity_residual)},
                          {"quotient_residual", num(l.quotient_residual)},
                          {"boundary_derivative", num(l.boundary_derivative)}});
    }
    const json doc{{"levels", levels},
                   {"boundary_offset", num(t.boundary_offset)},
                   {"lambda1_limit", num(t.lambda1_limit)},
                   {"lambda2_limit", num(t.lambda2_limit)},
                   {"orders",
                    {{"lambda1", orders_json(t.order_lambda1)},
                     {"lambda2", orders_json(t.order_lambda2)},
                     {"identity_residual", orders_json(t.order_identity)},
                     {"quotient_residual", orders_json(t.order_quotient)},
                     {"boundary_derivative", orders_json(t.order_boundary_derivative)}}}};
    return dump(doc, pretty);
}

std::string to_json(const OracleComparison& c, bool pretty) {
    const json doc{{"dofs", c.dofs},
                   {"lambda1", num(c.lambda1)},
                   {"lambda2", num(c.lambda2)},
                   {"oracle1", num(c.oracle1)},
                   {"oracle2", num(c.oracle2)},
                   {"deviation1", num(c.deviation1)},
                   {"deviation2", num(c.deviation2)},
                   {"status", c.agree ? "PASS" : "FAIL"}};
    return dump(doc, pretty);
}

std::string error_json(const std::string& type, const std::string& message) {
    return json{{"status", "ERROR"}, {"error", {{"type", type}, {"message", message}}}}.dump(2);
}

std::string error_type(const std::exception& e) {
    if (dynamic_cast<const NoConvergence*>(&e)) return "NoConvergence";
    if (dynamic_cast<const EmptyMask*>(&e)) return "EmptyMask";
    if (dynamic_cast<const ZeroDenominator*>(&e)) return "ZeroDenominator";
    if (dynamic_cast<const ExtrapolationUnstable*>(&e)) return "ExtrapolationUnstable";
    if (dynamic_cast<const SolverError*>(&e)) return "SolverError";
    if (dynamic_cast<const HypothesisFailed*>(&e)) return "HypothesisFailed";
    if (dynamic_cast<const NotADisk*>(&e)) return "NotADisk";
    if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
    if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
    return "Error";
}

}  // namespace gaplab
