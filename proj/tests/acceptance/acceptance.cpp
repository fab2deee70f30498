#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "gaplab/error.hpp"
#include "gaplab/gap.hpp"
#include "gaplab/groundstate.hpp"
#include "gaplab/runner.hpp"
#include "gaplab/spectrum.hpp"

using namespace gaplab;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    std::string id;
    std::string title;
    double budget_seconds;
    std::function<Outcome()> body;
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

struct Solved {
    DomainGrid grid;
    PotentialField field;
    SpectrumResult spectrum;
};

Solved solve(const std::string& config_json) {
    const RunConfig c = parse_config(config_json);
    auto grid = build_grid(c.domain);
    auto field = sample(c.potential, grid);
    const auto op = assemble(grid, field, c.bc);
    auto s = smallest_two(op, c.tol, c.max_iter, c.seed);
    return {std::move(grid), std::move(field), std::move(s)};
}

std::string interval(double a, double b, int n, const std::string& potential, const std::string& bc) {
    return R"({"domain": {"kind": "interval", "lower": )" + sci(a) + R"(, "upper": )" + sci(b) +
           R"(, "resolution": )" + std::to_string(n) + R"(}, "potential": )" + potential + R"(, "bc": ")" + bc +
           R"("})";
}

const std::string kHarmonic = interval(-8, 8, 1025, R"({"family": "harmonic", "c": 2})", "dirichlet");

// Random configurations with at most 400 unknowns.
std::string random_config(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); };
    const int kind = pick(0, 2);
    const char* bc = pick(0, 1) ? "neumann" : "dirichlet";
    std::string domain;
    Point lo{-1.0 - unit(gen), -1.0 - unit(gen)};
    Point hi{1.0 + unit(gen), 1.0 + unit(gen)};
    if (kind == 0) {
        domain = R"({"kind": "interval", "lower": )" + std::to_string(lo[0]) + R"(, "upper": )" +
                 std::to_string(hi[0]) + R"(, "resolution": )" + std::to_string(pick(8, 400)) + "}";
    } else if (kind == 1) {
        const int nx = pick(8, 40);
        const int ny = pick(8, std::max(8, 400 / nx));
        domain = R"({"kind": "rectangle", "lower": [)" + std::to_string(lo[0]) + "," + std::to_string(lo[1]) +
                 R"(], "upper": [)" + std::to_string(hi[0]) + "," + std::to_string(hi[1]) +
                 R"(], "resolution": [)" + std::to_string(nx) + "," + std::to_string(ny) + "]}";
    } else {
        const int angular = 2 * pick(4, 12);
        const int rings = pick(8, std::max(8, 399 / angular));
        domain = R"({"kind": "disk", "radius": )" + std::to_string(0.5 + unit(gen)) + R"(, "resolution": [)" +
                 std::to_string(rings) + "," + std::to_string(angular) + "]}";
    }
    std::string potential;
    switch (pick(0, 5)) {
        case 0: potential = R"({"family": "zero"})"; break;
        case 1: potential = R"({"family": "harmonic", "c": )" + std::to_string(0.5 + 4 * unit(gen)) + "}"; break;
        case 2:
            potential = R"({"family": "shifted_harmonic", "c": )" + std::to_string(0.5 + 4 * unit(gen)) +
                        R"(, "center": [)" + std::to_string(unit(gen) - 0.5) + "," + std::to_string(unit(gen) - 0.5) +
                        "]}";
            break;
        case 3:
            potential = R"({"family": "double_well", "a4": )" + std::to_string(0.5 + unit(gen)) + R"(, "a2": )" +
                        std::to_string(-0.5 - 3 * unit(gen)) + "}";
            break;
        case 4:
            potential = R"({"family": "tilted", "slope": [)" + std::to_string(4 * unit(gen) - 2) + "," +
                        std::to_string(4 * unit(gen) - 2) + "]}";
            break;
        default:
            potential = R"({"family": "random_smooth", "seed": )" + std::to_string(pick(0, 1 << 20)) +
                        R"(, "amplitude": )" + std::to_string(3 * unit(gen)) + R"(, "wavenumber": 4})";
            break;
    }
    return R"({"domain": )" + domain + R"(, "potential": )" + potential + R"(, "bc": ")" + bc + R"("})";
}

Outcome oracle_equivalence() {
    std::mt19937_64 gen(24029);
    double worst = 0.0;
    int agree = 0;
    std::size_t largest = 0;
    for (int i = 0; i < 20; ++i) {
        const RunConfig c = parse_config(random_config(gen));
        const auto grid = build_grid(c.domain);
        const auto op = assemble(grid, sample(c.potential, grid), c.bc);
        largest = std::max(largest, op.dofs());
        const auto dense = dense_oracle(op);
        const auto s = smallest_two(op, c.tol, c.max_iter, c.seed);
        const double d1 = std::abs(s.lambda1 - dense[0]) / std::max(1.0, std::abs(dense[0]));
        const double d2 = std::abs(s.lambda2 - dense[1]) / std::max(1.0, std::abs(dense[1]));
        worst = std::max({worst, d1, d2});
        if (d1 <= 1e-8 && d2 <= 1e-8) ++agree;
    }
    return {agree == 20 && largest <= 400, std::to_string(agree) + "/20 configs agree, max relative deviation " +
                                               sci(worst) + ", largest N " + std::to_string(largest)};
}

Outcome dirichlet_benchmark() {
    const auto r = run(parse_config(interval(0, 1, 513, R"({"family": "zero"})", "dirichlet")));
    const double e1 = std::abs(r.spectrum.lambda1 - pi * pi) / (pi * pi);
    const double eg = std::abs(r.gap.gap - 3 * pi * pi) / (3 * pi * pi);
    const auto t = converge(parse_config(interval(0, 1, 65, R"({"family": "zero"})", "dirichlet")), 4);
    bool orders_ok = !t.order_lambda1.empty();
    std::string orders;
    for (double p : t.order_lambda1) {
        orders_ok = orders_ok && std::abs(p - 2.0) <= 0.2;
        orders += (orders.empty() ? "" : ", ") + sci(p);
    }
    return {e1 <= 5e-4 && eg <= 5e-4 && orders_ok, "lambda1 rel err " + sci(e1) + ", gap rel err " + sci(eg) +
                                                       ", lambda1 orders [" + orders + "]"};
}

Outcome universal_sharpness() {
    const double h = 1.0 / 64;
    bool ok = true;
    std::string detail;
    const auto rows = sweep(parse_config(kHarmonic), "c", {0.5, 1, 2, 4});
    for (const auto& row : rows) {
        if (!row.report) return {false, "c = " + sci(row.value) + ": " + row.error};
        const double bound = std::sqrt(2 * row.value);
        const double gap = row.report->gap.gap;
        const bool within = std::abs(gap - bound) <= 0.01 * bound && gap >= bound - 20 * h * h;
        ok = ok && within;
        detail += (detail.empty() ? "" : "; ") + std::string("c=") + sci(row.value) + " gap " + sci(gap) + " vs " +
                  sci(bound);
    }
    return {ok, detail};
}

const std::vector<std::pair<std::string, std::string>>& convex_dirichlet_configs() {
    static const std::vector<std::pair<std::string, std::string>> configs{
        {"harmonic 1D", kHarmonic},
        {"shifted harmonic 1D", interval(-5, 7, 769, R"({"family": "shifted_harmonic", "c": 3, "center": 1.5})",
                                         "dirichlet")},
        {"harmonic rectangle",
         R"({"domain": {"kind": "rectangle", "lower": [-4, -4], "upper": [4, 4], "resolution": [129, 129]},
             "potential": {"family": "harmonic", "c": 2}, "bc": "dirichlet"})"},
        {"shifted harmonic rectangle",
         R"({"domain": {"kind": "rectangle", "lower": [0, 0], "upper": [2, 1], "resolution": [65, 33]},
             "potential": {"family": "shifted_harmonic", "c": 4, "center": [1.2, 0.4]}, "bc": "dirichlet"})"},
    };
    return configs;
}

Outcome beta_bound_check() {
    bool ok = true;
    std::string detail;
    for (const auto& [name, cfg] : convex_dirichlet_configs()) {
        const auto r = run(parse_config(cfg));
        const auto* c = r.gap.find("bound_beta");
        const bool pass = c && c->status == CheckStatus::pass;
        ok = ok && pass;
        detail += (detail.empty() ? "" : "; ") + name + " margin " + (c ? sci(c->margin) : "n/a");
    }
    return {ok, detail};
}

Outcome log_concavity() {
    bool ok = true;
    std::string detail;
    for (const auto& [name, cfg] : convex_dirichlet_configs()) {
        const auto r = run(parse_config(cfg));
        const double bound = std::sqrt(r.diagnostics.c / 2);
        const bool pass = r.diagnostics.hess_diag_min >= bound - r.diagnostics.tol_check;
        ok = ok && pass;
        detail += (detail.empty() ? "" : "; ") + name + " " + sci(r.diagnostics.hess_diag_min) + " vs " + sci(bound);
    }
    const auto h = run(parse_config(kHarmonic));
    const double rel = std::abs(h.diagnostics.hess_diag_min - 1.0);
    detail += "; harmonic near-equality rel " + sci(rel);
    return {ok && rel <= 0.02, detail};
}

Outcome boundary_derivative_and_quotient() {
    const auto s = solve(interval(0, 1, 513, R"({"family": "zero"})", "dirichlet"));
    const auto q = quotient(s.spectrum, s.grid, BoundaryCondition::dirichlet);
    const auto l = boundary_derivative_check(q, s.grid);
    const double h = s.grid.h_max();
    const double sign = q.u[0] > 0 ? 1.0 : -1.0;
    double worst = 0.0;
    for (std::size_t k = 0; k < s.grid.size(); ++k) {
        worst = std::max(worst, std::abs(q.u[k] - sign * 2 * std::cos(pi * s.grid.point(k)[0])));
    }
    const double rel = worst / 2.0;
    const auto t = converge(parse_config(interval(0, 1, 65, R"({"family": "zero"})", "dirichlet")), 4);
    bool orders_ok = t.order_quotient.size() == 3;
    std::string orders;
    for (double p : t.order_quotient) {
        orders_ok = orders_ok && p >= 1.8;
        orders += (orders.empty() ? "" : ", ") + sci(p);
    }
    const bool derivative_ok = l && *l <= 20 * h * h;
    return {derivative_ok && orders_ok && rel <= 5e-3,
            "boundary_derivative " + (l ? sci(*l) : std::string("skipped")) + " vs " + sci(20 * h * h) + ", quotient residual orders [" +
                orders + "], cos error " + sci(rel)};
}

Outcome deficit_check() {
    bool ok = true;
    std::string detail;
    const std::vector<std::pair<std::string, std::string>> configs{
        {"double well 1D", interval(-3, 3, 769, R"({"family": "double_well", "a4": 1, "a2": -4})", "neumann")},
        {"double well rectangle",
         R"({"domain": {"kind": "rectangle", "lower": [-2, -1.5], "upper": [2, 1.5], "resolution": [65, 49]},
             "potential": {"family": "double_well", "a4": 1, "a2": -2}, "bc": "neumann"})"},
    };
    for (const auto& [name, cfg] : configs) {
        const auto r = run(parse_config(cfg));
        const auto* c = r.gap.find("bound_deficit");
        const bool pass = c && c->status == CheckStatus::pass && c->blocking;
        ok = ok && pass;
        detail += name + " gap " + sci(r.gap.gap) + " bound " + sci(c ? c->bound : NAN) + " (a " +
                  sci(r.gap.bounds.a) + "); ";
    }
    const bool exact = deficit_bound(0.0, 1.0) == 2.0;
    bool covariance = true;
    for (double a : {0.0, 0.25, 1.5}) {
        for (double s : {0.5, 2.0, 3.0}) {
            const double lhs = deficit_bound(a, s * 1.3);
            const double rhs = deficit_bound(a * s * s, 1.3) / (s * s);
            covariance = covariance && std::abs(lhs - rhs) <= 1e-13 * std::max(std::abs(rhs), 1e-300);
        }
    }
    detail += std::string("bound(0,1)=2 ") + (exact ? "ok" : "wrong") + ", scaling " + (covariance ? "ok" : "wrong");
    return {ok && exact && covariance, detail};
}

Outcome neumann_disjunction() {
    const auto s = solve(R"({"domain": {"kind": "disk", "radius": 1, "resolution": [64, 128]},
                            "potential": {"family": "harmonic", "c": 2}, "bc": "neumann"})");
    const auto gsl = log_ground_state(s.spectrum, s.grid);
    const auto lb = laplacian_bounds_check(gsl, s.grid, s.field, metrics(s.grid), s.spectrum.lambda1);
    const double tol = check_tolerance(s.grid);
    return {lb.max_laplacian <= lb.bound + tol, "max Laplacian(phi) " + sci(lb.max_laplacian) + " vs max(B1, B2) " +
                                                    sci(lb.bound) + " (B1 " + sci(lb.b1) + ", B2 " + sci(lb.b2) + ")"};
}

Outcome growth_estimate() {
    const auto s = solve(R"({"domain": {"kind": "disk", "radius": 1, "resolution": [64, 128]},
                            "potential": {"family": "harmonic", "c": 2}, "bc": "neumann"})");
    const auto gsl = log_ground_state(s.spectrum, s.grid);
    const double h = s.grid.h_max();
    try {
        const auto g = growth_check(gsl, s.grid, s.field);
        return {g.margin >= -10 * h * h, "margin " + sci(g.margin) + " vs -10h^2 = " + sci(-10 * h * h)};
    } catch (const HypothesisFailed& e) {
        return {false, std::string("hypothesis failed: ") + e.what()};
    }
}

Outcome identity_order() {
    RunConfig c = parse_config(interval(-8, 8, 257, R"({"family": "harmonic", "c": 2})", "dirichlet"));
    const auto t = converge(c, 4);
    bool ok = t.order_identity.size() == 3;
    std::string orders;
    for (double p : t.order_identity) {
        ok = ok && p >= 1.8;
        orders += (orders.empty() ? "" : ", ") + sci(p);
    }
    return {ok, "identity residual orders [" + orders + "]"};
}

Outcome quotient_gradient() {
    const auto s = solve(kHarmonic);
    const auto q = quotient(s.spectrum, s.grid, BoundaryCondition::dirichlet);
    const auto gsl = log_ground_state(s.spectrum, s.grid);
    const auto he = hessian_extrema(gsl);
    const auto g = proof_gradient_checks(q, gsl, s.grid, s.spectrum.gap(), s.field.hessian_lb, he.hess_min, 1.0, 1.0);
    const double tol = check_tolerance(s.grid);
    return {g.quotient_gradient_applicable && g.quotient_gradient_margin <= tol,
            "margin " + sci(g.quotient_gradient_margin) + " vs tol " + sci(tol) + " (alpha " + sci(g.quotient_gradient_alpha) + ")"};
}

Outcome barrier_gradient() {
    const auto s = solve(interval(0, 1, 513, R"({"family": "zero"})", "neumann"));
    const auto q = quotient(s.spectrum, s.grid, BoundaryCondition::neumann);
    const auto gsl = log_ground_state(s.spectrum, s.grid);
    const auto he = hessian_extrema(gsl);
    const auto g = proof_gradient_checks(q, gsl, s.grid, s.spectrum.gap(), s.field.hessian_lb, he.hess_min, 1.0, 1.0);
    const double tol = check_tolerance(s.grid);
    return {g.barrier_applicable && g.barrier_margin <= tol,
            "literal margin " + sci(g.barrier_margin) + " vs tol " + sci(tol) + " (corrected form " +
                sci(g.barrier_corrected_margin) + ")"};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {"1", "oracle equivalence", 30, oracle_equivalence},
        {"2", "Dirichlet Laplacian benchmark", 10, dirichlet_benchmark},
        {"3", "universal bound sharpness", 20, universal_sharpness},
        {"4", "optimized beta bound on convex Dirichlet configs", 60, beta_bound_check},
        {"5", "log-concavity of the ground state", 30, log_concavity},
        {"6", "boundary derivative and the quotient equation", 10, boundary_derivative_and_quotient},
        {"7", "Hessian deficit bound", 60, deficit_check},
        {"8", "Neumann Laplacian disjunction", 30, neumann_disjunction},
        {"9", "growth estimate", 30, growth_estimate},
        {"10", "log ground state identity order", 10, identity_order},
        {"11a", "quotient gradient estimate", 10, quotient_gradient},
        {"11b", "barrier gradient estimate", 10, barrier_gradient},
    };
    std::vector<std::string> selected(argv + 1, argv + argc);
    int failures = 0;
    int ran = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
        ++ran;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.body();
        } catch (const std::exception& e) {
            out = {false, error_type(e) + ": " + e.what()};
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool pass = out.pass && elapsed <= c.budget_seconds;
        if (!pass) ++failures;
        std::printf("[%s] %-4s %s: %s (%.2f s, budget %.0f s)\n", pass ? "PASS" : "FAIL", c.id.c_str(),
                    c.title.c_str(), out.detail.c_str(), elapsed, c.budget_seconds);
        std::fflush(stdout);
    }
    if (ran == 0) {
        std::fprintf(stderr, "no criterion matches the selection\n");
        return 2;
    }
    return failures == 0 ? 0 : 1;
}
