#include "gaplab/gap.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "gaplab/error.hpp"
#include "gaplab/stencil.hpp"

namespace gaplab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kRootTwo = std::numbers::sqrt2;

template <class F>
void for_each_edge(const DomainGrid& grid, F&& visit) {
    const auto [nx, ny] = grid.extent();
    if (grid.kind() == DomainKind::disk) {
        for (int j = 0; j < ny; ++j) visit(std::size_t{0}, grid.flat(1, j));
        for (int i = 1; i < nx; ++i) {
            for (int j = 0; j < ny; ++j) {
                visit(grid.flat(i, j), grid.flat(i, j + 1));
                if (i + 1 < nx) visit(grid.flat(i, j), grid.flat(i + 1, j));
            }
        }
        return;
    }
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            if (i + 1 < nx) visit(grid.flat(i, j), grid.flat(i + 1, j));
            if (j + 1 < ny) visit(grid.flat(i, j), grid.flat(i, j + 1));
        }
    }
}

bool reliable_line(const std::vector<double>& u, const std::array<std::size_t, 3>& line) {
    return std::isfinite(u[line[0]]) && std::isfinite(u[line[1]]) && std::isfinite(u[line[2]]);
}

double golden_max(const std::function<double(double)>& f, double lo, double hi, double& arg) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-10) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    arg = 0.5 * (a + b);
    return f(arg);
}

}  // namespace

bool QuotientField::has_nodal_set() const {
    return std::any_of(nodal.begin(), nodal.end(), [](std::uint8_t v) { return v != 0; });
}

QuotientField quotient(const SpectrumResult& spectrum, const DomainGrid& grid, BoundaryCondition bc, double delta) {
    if (spectrum.nodal1.size() != grid.size() || spectrum.nodal2.size() != grid.size()) {
        throw ConfigError("quotient: spectrum does not match grid");
    }
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("quotient: delta must lie in (0, 1)");
    const auto& u1 = spectrum.nodal1;
    const auto& u2 = spectrum.nodal2;
    const double floor = delta * *std::max_element(u1.begin(), u1.end());

    QuotientField q;
    q.delta = delta;
    q.bc = bc;
    q.u.assign(grid.size(), kNaN);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (bc == BoundaryCondition::dirichlet && grid.is_boundary(k)) continue;
        if (u1[k] >= floor && u1[k] > 0.0) q.u[k] = u2[k] / u1[k];
    }

    double interior_sup = 0.0;
    for (double v : q.u) {
        if (std::isfinite(v)) interior_sup = std::max(interior_sup, std::abs(v));
    }

    if (bc == BoundaryCondition::dirichlet) {
        // Edge nodes first; rectangle corners extrapolate along edge nodes filled in the first pass.
        const auto boundary = grid.boundary_nodes();
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k : boundary) {
                const bool corner = grid.kind() == DomainKind::rectangle && grid.is_corner(k);
                if (corner != (pass == 1)) continue;
                const auto line = inward_line(grid, k);
                if (!reliable_line(q.u, line)) continue;
                const double quadratic = 3.0 * q.u[line[0]] - 3.0 * q.u[line[1]] + q.u[line[2]];
                const double linear = 2.0 * q.u[line[0]] - q.u[line[1]];
                if (std::abs(quadratic - linear) > 0.1 * interior_sup) {
                    throw ExtrapolationUnstable("quotient: boundary extrapolants differ by " +
                                                std::to_string(std::abs(quadratic - linear)) + " at node " +
                                                std::to_string(k));
                }
                q.u[k] = quadratic;
            }
        }
    }

    std::size_t peak = grid.size();
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!std::isfinite(q.u[k])) continue;
        if (peak == grid.size() || std::abs(q.u[k]) > std::abs(q.u[peak])) peak = k;
    }
    if (peak == grid.size()) throw EmptyMask("quotient: no node has u1 above the reliability floor");
    q.sup_abs = std::abs(q.u[peak]);
    if (!(q.sup_abs > 0.0)) throw ZeroDenominator("quotient: u vanishes identically");
    if (q.u[peak] < 0.0) {
        q.flipped = true;
        for (double& v : q.u) v = -v;
    }

    q.nodal.assign(grid.size(), 0);
    for_each_edge(grid, [&](std::size_t a, std::size_t b) {
        const double ua = q.u[a], ub = q.u[b];
        if (!std::isfinite(ua) || !std::isfinite(ub)) return;
        if (ua * ub < 0.0 || (ua * ub == 0.0 && (ua != 0.0 || ub != 0.0))) q.nodal[a] = q.nodal[b] = 1;
    });

    q.normal_derivative.assign(grid.size(), kNaN);
    for (std::size_t k : grid.boundary_nodes()) {
        const auto line = inward_line(grid, k);
        if (!std::isfinite(q.u[k]) || !reliable_line(q.u, line)) continue;
        q.normal_derivative[k] = normal_derivative(grid, q.u, k);
    }
    return q;
}

std::optional<double> boundary_derivative_check(const QuotientField& q, const DomainGrid& grid) {
    double worst = 0.0;
    for (std::size_t k : grid.boundary_nodes()) {
        const double d = q.normal_derivative.at(k);
        if (!std::isfinite(d)) return std::nullopt;
        worst = std::max(worst, std::abs(d));
    }
    return worst;
}

double quotient_residual(const QuotientField& q, const GroundStateLog& gsl, const DomainGrid& grid, double gap) {
    if (gsl.masked.empty()) throw EmptyMask("quotient_residual: empty mask");
    double worst = 0.0;
    bool any = false;
    for (std::size_t k : gsl.masked) {
        const LocalDerivatives d = local_derivatives(grid, q.u, k);
        const auto& g = gsl.gradient[k];
        const double r = d.laplacian + gap * q.u[k] - 2.0 * (g[0] * d.gradient[0] + g[1] * d.gradient[1]);
        if (!std::isfinite(r)) continue;
        worst = std::max(worst, std::abs(r));
        any = true;
    }
    if (!any) throw EmptyMask("quotient_residual: quotient undefined on the whole mask");
    return worst;
}

double theta(double beta) {
    if (!(beta > 0.0 && beta < kRootTwo)) throw DomainError("theta: beta must lie in (0, sqrt 2)");
    return std::asin(1.0 / std::sqrt(1.0 + beta / (kRootTwo - beta)));
}

std::pair<double, double> beta_bound(double c, double d) {
    if (!(c > 0.0) || !(d > 0.0)) throw DomainError("beta_bound: requires c > 0 and d > 0");
    const double root_c = std::sqrt(c);
    const std::function<double(double)> f = [&](double beta) {
        const double t = theta(beta);
        return t * t / (d * d) + beta * root_c;
    };
    // Golden section over the whole range, then over 8 sub-brackets in case the objective is not unimodal.
    double best_beta = 0.0;
    double best = golden_max(f, 0.0, kRootTwo, best_beta);
    constexpr int kBrackets = 8;
    for (int b = 0; b < kBrackets; ++b) {
        double arg = 0.0;
        const double v = golden_max(f, b * kRootTwo / kBrackets, (b + 1) * kRootTwo / kBrackets, arg);
        if (v > best) {
            best = v;
            best_beta = arg;
        }
    }
    return {best, best_beta};
}

double deficit_bound(double a, double d) {
    if (!(d > 0.0) || a < 0.0) throw DomainError("deficit_bound: requires a >= 0 and d > 0");
    return 2.0 / (d * d) * std::exp(-a * d * d);
}

GapBounds gap_lower_bounds(const DomainMetrics& metrics, double c, double hess_min, double gap_measured,
                           BoundaryCondition bc) {
    GapBounds b;
    b.gap = gap_measured;
    b.a = std::max(0.0, -hess_min);
    const double d = metrics.diameter;
    if (c > 0.0) {
        b.universal = {true, false, std::sqrt(2.0 * c), gap_measured - std::sqrt(2.0 * c)};
        const auto [value, beta] = beta_bound(c, d);
        b.beta = {true, false, value, gap_measured - value};
        b.beta_star = beta;
    }
    const double v32 = deficit_bound(b.a, d);
    b.deficit = {true, bc == BoundaryCondition::dirichlet, v32, gap_measured - v32};
    return b;
}

GradientChecks proof_gradient_checks(const QuotientField& q, const GroundStateLog& gsl, const DomainGrid& grid,
                                     double gap, double c, double hess_min, double beta, double epsilon) {
    if (!(beta > 0.0 && beta < kRootTwo)) throw DomainError("proof_gradient_checks: beta must lie in (0, sqrt 2)");
    if (!(epsilon > 0.0)) throw DomainError("proof_gradient_checks: epsilon must be positive");
    if (gsl.masked.empty()) throw EmptyMask("proof_gradient_checks: empty mask");

    struct Sample {
        double u;
        double grad;
    };
    std::vector<Sample> samples;
    double sup_u = -std::numeric_limits<double>::infinity();
    double inf_u = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!std::isfinite(q.u[k])) continue;
        sup_u = std::max(sup_u, q.u[k] / q.sup_abs);
        inf_u = std::min(inf_u, q.u[k] / q.sup_abs);
    }
    for (std::size_t k : gsl.masked) {
        const LocalDerivatives d = local_derivatives(grid, q.u, k);
        const double g = std::hypot(d.gradient[0], d.gradient[1]) / q.sup_abs;
        if (!std::isfinite(g) || !std::isfinite(q.u[k])) continue;
        samples.push_back({q.u[k] / q.sup_abs, g});
    }
    if (samples.empty()) throw EmptyMask("proof_gradient_checks: quotient undefined on the whole mask");

    GradientChecks out;
    const double alpha_quotient = gap - beta * std::sqrt(std::max(c, 0.0));
    if (c > 0.0 && alpha_quotient > 0.0) {
        out.quotient_gradient_applicable = true;
        out.quotient_gradient_alpha = alpha_quotient;
        const double k_factor = 1.0 + beta / (kRootTwo - beta);
        double worst = -std::numeric_limits<double>::infinity();
        for (const auto& s : samples) {
            worst = std::max(worst, s.grad / std::sqrt(alpha_quotient * (k_factor - s.u * s.u)) - 1.0);
        }
        out.quotient_gradient_margin = worst;
    }

    if (q.bc == BoundaryCondition::neumann) {
        out.barrier_applicable = true;
        const double c_bar = (1.0 + epsilon) * sup_u;
        const double alpha = 2.0 * gap * (1.0 + 1.0 / epsilon) - 4.0 * std::min(hess_min, 0.0);
        out.barrier_c_bar = c_bar;
        out.barrier_alpha = alpha;
        double literal = -std::numeric_limits<double>::infinity();
        double corrected = literal;
        for (const auto& s : samples) {
            const double lhs = s.grad / (c_bar - s.u);
            const double g_lit = std::max(0.0, std::log(c_bar) - std::log(c_bar - s.u));
            const double g_cor = std::max(0.0, std::log(c_bar - inf_u) - std::log(c_bar - s.u));
            literal = std::max(literal, lhs - std::sqrt(alpha * g_lit));
            corrected = std::max(corrected, lhs - std::sqrt(alpha * g_cor));
        }
        out.barrier_margin = literal;
        out.barrier_corrected_margin = corrected;
    }
    return out;
}

std::string to_string(CheckStatus status) {
    switch (status) {
        case CheckStatus::pass: return "PASS";
        case CheckStatus::fail: return "FAIL";
        case CheckStatus::skipped: return "SKIPPED";
        case CheckStatus::info: return "INFO";
    }
    return "SKIPPED";
}

const CheckResult* GapReport::find(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names{
        "bound_universal", "bound_beta",    "bound_deficit",     "log_concavity",   "quotient_gradient",
        "growth",          "laplacian_bound", "polar_angular", "polar_radial",    "barrier_gradient",
        "barrier_gradient_corrected", "quotient_residual", "identity_residual", "boundary_derivative", "cutoff", "degeneracy"};
    return names;
}

GapReport assemble_report(const ReportInputs& in) {
    GapReport report;
    report.gap = in.lambda2 - in.lambda1;
    report.bounds = in.bounds;
    const double tol = in.tol_check;

    auto skip_reason = [&](const std::string& name, const std::string& fallback) {
        for (const auto& [key, reason] : in.skipped) {
            if (key == name) return reason;
        }
        return fallback;
    };
    auto skipped = [&](const std::string& name, bool blocking, const std::string& why) {
        CheckResult r;
        r.name = name;
        r.blocking = blocking;
        r.status = CheckStatus::skipped;
        r.note = skip_reason(name, why);
        report.checks.push_back(r);
    };
    // Lower-bound style: margin = measured - bound must be >= -tolerance.
    auto lower = [&](const std::string& name, bool blocking, double measured, double bound, double tolerance,
                     const std::string& note) {
        CheckResult r;
        r.name = name;
        r.blocking = blocking;
        r.measured = measured;
        r.bound = bound;
        r.margin = measured - bound;
        r.tolerance = tolerance;
        r.status = std::isfinite(r.margin) && r.margin >= -tolerance ? CheckStatus::pass : CheckStatus::fail;
        r.note = note;
        report.checks.push_back(r);
    };
    // Excess style: measured = max(lhs - rhs) must be <= tolerance; margin reported as -excess.
    auto excess = [&](const std::string& name, bool blocking, double measured, double tolerance,
                      const std::string& note) {
        CheckResult r;
        r.name = name;
        r.blocking = blocking;
        r.measured = measured;
        r.bound = 0.0;
        r.margin = -measured;
        r.tolerance = tolerance;
        r.status = std::isfinite(measured) && measured <= tolerance ? CheckStatus::pass : CheckStatus::fail;
        r.note = note;
        report.checks.push_back(r);
    };
    auto info = [&](const std::string& name, double measured, const std::string& note) {
        CheckResult r;
        r.name = name;
        r.status = CheckStatus::info;
        r.measured = measured;
        r.note = note;
        report.checks.push_back(r);
    };

    const auto& b = in.bounds;
    if (b.universal.applicable) {
        lower("bound_universal", true, report.gap, b.universal.value, tol, "sqrt(2c)");
    } else {
        skipped("bound_universal", true, "requires c > 0");
    }
    if (b.beta.applicable) {
        lower("bound_beta", true, report.gap, b.beta.value, tol, "max over beta of theta^2/d^2 + beta sqrt(c)");
    } else {
        skipped("bound_beta", true, "requires c > 0");
    }
    if (b.deficit.applicable) {
        lower("bound_deficit", !b.deficit.advisory, report.gap, b.deficit.value, tol,
              b.deficit.advisory ? "advisory: Dirichlet problem" : "2 d^-2 exp(-a d^2)");
    } else {
        skipped("bound_deficit", true, "not evaluated");
    }

    if (in.bc == BoundaryCondition::dirichlet && in.c > 0.0 && in.hessian) {
        lower("log_concavity", true, in.hessian->hess_diag_min, std::sqrt(in.c / 2.0), tol,
              "min diagonal Hessian of phi vs sqrt(c/2)");
    } else {
        skipped("log_concavity", true, in.bc == BoundaryCondition::dirichlet ? "requires c > 0" : "Dirichlet only");
    }

    if (in.gradient && in.gradient->quotient_gradient_applicable) {
        excess("quotient_gradient", true, in.gradient->quotient_gradient_margin, tol, "max |grad u| / sqrt(alpha (K - u^2)) - 1");
    } else {
        skipped("quotient_gradient", true, "requires c > 0 and gap > beta sqrt(c)");
    }

    if (in.growth) {
        const double t = 10.0 * in.h * in.h;
        lower("growth", true, in.growth->boundary_max, in.growth->statistic_max, t,
              "max over boundary of -2 phi vs max of r phi_r - 2 phi");
    } else {
        skipped("growth", true, in.growth_skip_reason.empty() ? "Neumann disk only" : in.growth_skip_reason);
    }

    if (in.laplacian) {
        const auto& l = *in.laplacian;
        lower("laplacian_bound", !l.curvature_unavailable, l.bound, l.max_laplacian, tol,
              l.curvature_unavailable ? "flat boundary: interior branch only" : "max(B1, B2)");
    } else {
        skipped("laplacian_bound", true, "Neumann only");
    }

    if (in.polar) {
        lower("polar_angular", false, in.polar->angular_bound, in.polar->max_angular, tol, "angular second derivative");
        lower("polar_radial", false, std::max(in.polar->radial_interior_bound, in.polar->radial_boundary_bound), in.polar->max_radial, tol,
              "radial estimate");
    } else {
        skipped("polar_angular", false, "disk only");
        skipped("polar_radial", false, "disk only");
    }

    if (in.gradient && in.gradient->barrier_applicable) {
        excess("barrier_gradient", false, in.gradient->barrier_margin, tol, "literal barrier bound");
        excess("barrier_gradient_corrected", false, in.gradient->barrier_corrected_margin, tol,
               "barrier bound with log(c - inf u)");
    } else {
        skipped("barrier_gradient", false, "Neumann only");
        skipped("barrier_gradient_corrected", false, "Neumann only");
    }

    if (in.quotient_residual) {
        info("quotient_residual", *in.quotient_residual, "quotient equation residual");
    } else {
        skipped("quotient_residual", false, "not computed");
    }
    if (in.identity_residual) {
        info("identity_residual", *in.identity_residual, "log ground state identity residual");
    } else {
        skipped("identity_residual", false, "not computed");
    }
    if (in.boundary_derivative) {
        info("boundary_derivative", *in.boundary_derivative, "max boundary normal derivative of u");
    } else {
        skipped("boundary_derivative", false, "u1 below the reliability floor on the boundary stencil");
    }
    if (in.cutoff && in.cutoff->applicable) {
        info("cutoff", in.cutoff->sup_rho2_laplacian, "sup rho^2 Laplacian(phi)");
    } else {
        skipped("cutoff", false, "Dirichlet only");
    }
    info("degeneracy", report.gap, in.near_degenerate ? "near degenerate: gap below 10 tol" : "separated");

    for (const auto& c : report.checks) {
        if (c.blocking && c.status == CheckStatus::fail) report.status = CheckStatus::fail;
    }
    return report;
}

}  // namespace gaplab
