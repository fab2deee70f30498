#include "gaplab/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gaplab/error.hpp"

namespace gaplab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

bool finite(const LocalDerivatives& d) {
    return std::isfinite(d.gradient[0]) && std::isfinite(d.gradient[1]) && std::isfinite(d.hessian.xx) &&
           std::isfinite(d.hessian.xy) && std::isfinite(d.hessian.yy) && std::isfinite(d.laplacian);
}

void require_disk(const DomainGrid& grid, const char* what) {
    if (grid.kind() != DomainKind::disk) throw NotADisk(std::string(what) + " requires a disk grid");
}

double positive(double x) { return std::max(x, 0.0); }

struct PolarV {
    double v_r;
    double v_rr;
    double v_tt;
};

// Polar derivatives of V at x from the Cartesian gradient and Hessian.
PolarV polar_potential(const Potential& pot, const Point& x) {
    const double r = std::hypot(x[0], x[1]);
    if (r == 0.0) return {0.0, pot.hessian(x).xx, 0.0};
    const Point e{x[0] / r, x[1] / r};
    const Point t{-e[1], e[0]};
    const Point g = pot.gradient(x);
    const Sym2 h = pot.hessian(x);
    auto quad = [&](const Point& a) { return h.xx * a[0] * a[0] + 2.0 * h.xy * a[0] * a[1] + h.yy * a[1] * a[1]; };
    const double v_r = g[0] * e[0] + g[1] * e[1];
    return {v_r, quad(e), r * r * quad(t) - r * v_r};
}

}  // namespace

double default_boundary_offset(const DomainGrid& grid) {
    return 2.0 * (grid.kind() == DomainKind::disk ? grid.spacing()[0] : grid.h_max());
}

double check_tolerance(const DomainGrid& grid) {
    const double h = grid.h_max();
    return 20.0 * h * h + 1e-6;
}

GroundStateLog log_ground_state(std::span<const double> u1_nodal, const DomainGrid& grid, const MaskOptions& options) {
    if (!(options.delta > 0.0 && options.delta < 1.0)) throw ConfigError("mask delta must lie in (0, 1)");
    if (u1_nodal.size() != grid.size()) {
        throw std::invalid_argument("log_ground_state: u1 has " + std::to_string(u1_nodal.size()) +
                                    " values but grid has " + std::to_string(grid.size()) + " nodes");
    }
    const double offset = std::isnan(options.boundary_offset) ? default_boundary_offset(grid) : options.boundary_offset;
    if (offset < 0.0) throw ConfigError("mask boundary offset must be >= 0");

    const std::size_t n = grid.size();
    const double sup = *std::max_element(u1_nodal.begin(), u1_nodal.end());
    if (!(sup > 0.0)) throw EmptyMask("ground state has no positive value");

    GroundStateLog gsl;
    gsl.dimension = grid.dimension();
    gsl.delta = options.delta;
    gsl.boundary_offset = offset;
    gsl.u.resize(n);
    gsl.phi.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        gsl.u[k] = u1_nodal[k] / sup;
        gsl.phi[k] = gsl.u[k] > 0.0 ? -std::log(gsl.u[k]) : kInf;
    }
    gsl.gradient.assign(n, Point{kNaN, kNaN});
    gsl.hessian.assign(n, Sym2{kNaN, kNaN, kNaN});
    gsl.laplacian.assign(n, kNaN);
    gsl.polar.assign(n, std::nullopt);
    gsl.mask.assign(n, 0);

    // Tolerance absorbs rounding in node coordinates at exactly offset distance.
    const double slack = 1e-9 * grid.h_max();
    for (std::size_t k = 0; k < n; ++k) {
        if (!has_full_stencil(grid, k)) continue;
        if (gsl.u[k] < options.delta) continue;
        if (grid.boundary_distance(k) < offset - slack) continue;
        const LocalDerivatives d = local_derivatives(grid, gsl.phi, k);
        if (!finite(d)) continue;
        gsl.gradient[k] = d.gradient;
        gsl.hessian[k] = d.hessian;
        gsl.laplacian[k] = d.laplacian;
        gsl.polar[k] = d.polar;
        gsl.mask[k] = 1;
        gsl.masked.push_back(k);
    }
    if (gsl.masked.empty()) {
        throw EmptyMask("no node satisfies u1 >= " + std::to_string(options.delta) +
                        " sup u1 at boundary distance >= " + std::to_string(offset));
    }
    return gsl;
}

GroundStateLog log_ground_state(const SpectrumResult& spectrum, const DomainGrid& grid, const MaskOptions& options) {
    return log_ground_state(spectrum.nodal1, grid, options);
}

double phi_identity_residual(const GroundStateLog& gsl, const PotentialField& field, double lambda1) {
    double worst = 0.0;
    for (auto k : gsl.masked) {
        const Point& g = gsl.gradient[k];
        const double r = gsl.laplacian[k] - (g[0] * g[0] + g[1] * g[1]) + field.values[k] - lambda1;
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

HessianExtrema hessian_extrema(const GroundStateLog& gsl) {
    HessianExtrema out{kInf, kInf, 0};
    for (auto k : gsl.masked) {
        const double e = gsl.hessian[k].min_eigenvalue(gsl.dimension);
        if (e < out.hess_min) {
            out.hess_min = e;
            out.argmin = k;
        }
        out.hess_diag_min = std::min(out.hess_diag_min, gsl.hessian[k].min_diagonal(gsl.dimension));
    }
    return out;
}

LaplacianBounds laplacian_bounds_check(const GroundStateLog& gsl, const DomainGrid& grid, const PotentialField& field,
                                       const DomainMetrics& metrics, double lambda1) {
    LaplacianBounds out;
    out.max_laplacian = -kInf;
    for (auto k : gsl.masked) out.max_laplacian = std::max(out.max_laplacian, gsl.laplacian[k]);

    out.max_boundary_grad_sq = 0.0;
    for (auto k : grid.boundary_nodes()) {
        const double dn = normal_derivative(grid, gsl.phi, k);
        const double dt = tangential_derivative(grid, gsl.phi, k);
        out.max_boundary_grad_sq = std::max(out.max_boundary_grad_sq, dn * dn + dt * dt);
    }

    const double n = gsl.dimension;
    const double lap_v = positive(field.sup_laplacian);
    out.b1 = std::sqrt(n * lap_v / 2.0);
    out.b1_alt = 0.5 * n * std::sqrt(lap_v);

    out.curvature_unavailable = !(metrics.min_curvature > 0.0);
    if (!out.curvature_unavailable) {
        double sup_b2 = -kInf;
        double sup_grad = -kInf;
        for (auto k : grid.boundary_nodes()) {
            if (grid.is_corner(k)) continue;
            const double dv = field.boundary_normal_derivative[k] / metrics.min_curvature;
            sup_grad = std::max(sup_grad, dv);
            sup_b2 = std::max(sup_b2, dv - field.values[k]);
        }
        out.b2 = sup_b2 + lambda1;
        out.boundary_grad_bound = sup_grad;
        out.bound = std::max(out.b1, out.b2);
    } else {
        out.bound = out.b1;
    }
    out.margin = out.bound - out.max_laplacian;
    out.holds = out.margin >= -check_tolerance(grid);
    return out;
}

PolarDiagnostics polar_diagnostics(const GroundStateLog& gsl, const DomainGrid& grid, const PotentialField& field,
                                   double lambda1) {
    require_disk(grid, "polar_diagnostics");
    const Potential pot = field.potential();
    const double radius = grid.spec().radius;
    const double n = 2.0;

    PolarDiagnostics out;
    out.max_angular = -kInf;
    out.max_radial = -kInf;
    for (auto k : gsl.masked) {
        if (!gsl.polar[k]) continue;
        const PolarParts& p = *gsl.polar[k];
        out.max_angular = std::max(out.max_angular, p.f_tt);
        out.max_radial = std::max(out.max_radial, p.r * p.f_r + p.r * p.r * p.f_rr);
    }

    double sup213 = 0.0;
    double sup217 = 0.0;
    double sup220 = -kInf;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Point& x = grid.point(k);
        const double r = grid.radius_of(k);
        const PolarV pv = polar_potential(pot, x);
        const double v = field.values[k];
        sup213 = std::max(sup213, std::sqrt(positive(r * pv.v_tt)));
        sup217 = std::max(sup217, std::sqrt(positive(0.5 * r * pv.v_rr + 2.0 * r * pv.v_r + 2.0 * v - lambda1)));
        if (grid.is_boundary(k)) sup220 = std::max(sup220, -r * r * r * pv.v_r - 2.0 * r * r * (v - lambda1));
    }
    const double tol = check_tolerance(grid);
    out.angular_bound = 0.125 + radius * sup213;
    out.angular_margin = out.angular_bound - out.max_angular;
    out.angular_holds = out.angular_margin >= -tol;
    out.radial_interior_bound = sup217;
    out.radial_boundary_bound = sup220 / n;
    out.radial_margin = std::max(out.radial_interior_bound, out.radial_boundary_bound) - out.max_radial;
    out.radial_holds = out.radial_margin >= -tol;
    return out;
}

GrowthResult growth_margin(const GroundStateLog& gsl, const DomainGrid& grid) {
    require_disk(grid, "growth_check");
    GrowthResult out;
    out.statistic_max = -kInf;
    for (auto k : gsl.masked) {
        const Point& x = grid.point(k);
        const Point& g = gsl.gradient[k];
        out.statistic_max = std::max(out.statistic_max, x[0] * g[0] + x[1] * g[1] - 2.0 * gsl.phi[k]);
    }
    out.boundary_max = -kInf;
    for (auto k : grid.boundary_nodes()) out.boundary_max = std::max(out.boundary_max, -2.0 * gsl.phi[k]);
    out.margin = out.boundary_max - out.statistic_max;
    return out;
}

GrowthResult growth_check(const GroundStateLog& gsl, const DomainGrid& grid, const PotentialField& field) {
    require_disk(grid, "growth_check");
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (field.radial_derivative[k] < 0.0) {
            throw HypothesisFailed("growth_check: r dV/dr < 0 at node " + std::to_string(k));
        }
    }
    return growth_margin(gsl, grid);
}

CutoffRecord cutoff_diagnostic(const GroundStateLog& gsl, const DomainGrid& grid, const PotentialField& field,
                               double lambda1, BoundaryCondition bc) {
    CutoffRecord out;
    if (bc != BoundaryCondition::dirichlet) return out;
    out.applicable = true;
    const Potential pot = field.potential();
    const bool disk = grid.kind() == DomainKind::disk;
    const double radius = grid.spec().radius;

    out.sup_rho2_laplacian = -kInf;
    out.sup_rho_lap_rho = -kInf;
    // rho is a distance function: |grad rho| = 1 wherever it is differentiable.
    out.sup_grad_rho_sq = 1.0;
    for (auto k : gsl.masked) {
        const Point& x = grid.point(k);
        const double rho = grid.boundary_distance(k);
        out.sup_rho2_laplacian = std::max(out.sup_rho2_laplacian, rho * rho * gsl.laplacian[k]);
        if (disk) {
            const double r = grid.radius_of(k);
            if (r > 0.0) out.sup_rho_lap_rho = std::max(out.sup_rho_lap_rho, -(radius - r) / r - 3.0);
        } else {
            out.sup_rho_lap_rho = std::max(out.sup_rho_lap_rho, -3.0);
        }
        out.sup_rho2_sqrt_lap_v = std::max(out.sup_rho2_sqrt_lap_v, rho * rho * std::sqrt(positive(pot.laplacian(x))));
        out.sup_grad_rho_sqrt_v = std::max(out.sup_grad_rho_sqrt_v, std::sqrt(positive(field.values[k] - lambda1)));
    }
    if (!std::isfinite(out.sup_rho_lap_rho)) out.sup_rho_lap_rho = -3.0;
    return out;
}

}  // namespace gaplab
