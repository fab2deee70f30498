#include "doctest.h"

#include <cmath>
#include <numbers>

#include "gaplab/error.hpp"
#include "gaplab/groundstate.hpp"

using namespace gaplab;

namespace {

constexpr double pi = std::numbers::pi;

struct Solved {
    DomainGrid grid;
    PotentialField field;
    DiscreteOperator op;
    SpectrumResult spectrum;
};

Solved solve(const DomainSpec& spec, const PotentialSpec& pot, BoundaryCondition bc) {
    auto grid = build_grid(spec);
    auto field = sample(pot, grid);
    auto op = assemble(grid, field, bc);
    auto s = smallest_two(op);
    return {std::move(grid), std::move(field), std::move(op), std::move(s)};
}

}  // namespace

TEST_CASE("closed-form sine ground state") {
    const auto grid = build_grid(DomainSpec::interval(0, 1, 129));
    std::vector<double> u(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) u[k] = std::sin(pi * grid.point(k)[0]);
    const auto gsl = log_ground_state(u, grid);
    const std::size_t mid = 64;
    CHECK(std::abs(gsl.phi[mid]) < 1e-15);
    CHECK(gsl.hessian[mid].xx == doctest::Approx(pi * pi).epsilon(1e-3));
    CHECK(std::isinf(gsl.phi[0]));
    CHECK_FALSE(gsl.in_mask(1));
    CHECK(gsl.in_mask(2));
    CHECK(hessian_extrema(gsl).hess_min == doctest::Approx(pi * pi).epsilon(1e-3));
}

TEST_CASE("constant ground state") {
    const auto grid = build_grid(DomainSpec::rectangle({0, 0}, {1, 1}, 9, 9));
    const std::vector<double> u(grid.size(), 0.3);
    const auto gsl = log_ground_state(u, grid);
    for (auto k : gsl.masked) {
        CHECK(gsl.phi[k] == 0.0);
        CHECK(gsl.laplacian[k] == 0.0);
        CHECK(gsl.gradient[k][0] == 0.0);
    }
    const auto field = sample(PotentialSpec::zero(), grid);
    CHECK(phi_identity_residual(gsl, field, 0.0) == 0.0);
    const auto he = hessian_extrema(gsl);
    CHECK(he.hess_min == 0.0);
    CHECK(he.hess_diag_min == 0.0);
}

TEST_CASE("mask validation") {
    const auto grid = build_grid(DomainSpec::interval(0, 1, 9));
    std::vector<double> u(grid.size(), 1.0);
    CHECK_THROWS_AS(log_ground_state(u, grid, {0.0}), ConfigError);
    CHECK_THROWS_AS(log_ground_state(u, grid, {1.0}), ConfigError);
    CHECK_THROWS_AS(log_ground_state(u, grid, {1e-6, 0.6}), EmptyMask);
    CHECK_THROWS_AS(log_ground_state(std::vector<double>(3, 1.0), grid), std::invalid_argument);
}

TEST_CASE("harmonic oscillator ground state") {
    const double h = 1.0 / 64;
    const auto coarse = solve(DomainSpec::interval(-8, 8, 16 * 64 + 1), PotentialSpec::harmonic(2.0),
                              BoundaryCondition::dirichlet);
    const auto gsl = log_ground_state(coarse.spectrum, coarse.grid);
    for (auto k : gsl.masked) CHECK(gsl.hessian[k].xx == doctest::Approx(1.0).epsilon(2e-3));
    const auto he = hessian_extrema(gsl);
    CHECK(he.hess_min >= 1.0 - 20 * h * h);
    CHECK(he.hess_min <= he.hess_diag_min);

    // Leading error of the identity residual is h^2 (x^4/12 - x^2/2 + 1/4), largest at the mask edge.
    double edge = 0.0;
    for (auto k : gsl.masked) edge = std::max(edge, std::abs(coarse.grid.point(k)[0]));
    const double predicted = h * h * (std::pow(edge, 4) / 12 - edge * edge / 2 + 0.25);
    const double r1 = phi_identity_residual(gsl, coarse.field, coarse.spectrum.lambda1);
    CHECK(r1 == doctest::Approx(predicted).epsilon(0.05));

    const auto fine = solve(DomainSpec::interval(-8, 8, 16 * 128 + 1), PotentialSpec::harmonic(2.0),
                            BoundaryCondition::dirichlet);
    const auto gsl2 = log_ground_state(fine.spectrum, fine.grid);
    const double r2 = phi_identity_residual(gsl2, fine.field, fine.spectrum.lambda1);
    CHECK(r1 / r2 >= 3.5);
    CHECK(r1 / r2 <= 4.5);
}

TEST_CASE("Dirichlet V=0 identity residual converges with a frozen offset") {
    double previous = 0.0;
    for (int level = 0; level < 3; ++level) {
        const int m = 64 << level;
        const auto s = solve(DomainSpec::interval(0, 1, m + 1), PotentialSpec::zero(), BoundaryCondition::dirichlet);
        const auto gsl = log_ground_state(s.spectrum, s.grid, {1e-6, 2.0 / 64});
        const double r = phi_identity_residual(gsl, s.field, s.spectrum.lambda1);
        if (level > 0) CHECK(std::log2(previous / r) >= 1.8);
        previous = r;
    }
}

TEST_CASE("mask monotonicity in delta") {
    const auto s = solve(DomainSpec::interval(-4, 4, 257), PotentialSpec::double_well(1.0, -4.0),
                         BoundaryCondition::dirichlet);
    const double loose = hessian_extrema(log_ground_state(s.spectrum, s.grid, {1e-3})).hess_min;
    const double tight = hessian_extrema(log_ground_state(s.spectrum, s.grid, {1e-8})).hess_min;
    CHECK(tight <= loose + check_tolerance(s.grid));
}

TEST_CASE("Laplacian bounds on Neumann disks") {
    SUBCASE("V = 0") {
        const auto s = solve(DomainSpec::disk(1.0, 16, 32), PotentialSpec::zero(), BoundaryCondition::neumann);
        const auto gsl = log_ground_state(s.spectrum, s.grid);
        const auto lb = laplacian_bounds_check(gsl, s.grid, s.field, metrics(s.grid), s.spectrum.lambda1);
        CHECK(std::abs(lb.max_laplacian) < 1e-6);
        CHECK(lb.b1 == 0.0);
        CHECK(lb.holds);
    }
    SUBCASE("centered harmonic") {
        const auto s = solve(DomainSpec::disk(1.0, 24, 32), PotentialSpec::shifted_harmonic(2.0, {0, 0}),
                             BoundaryCondition::neumann);
        const auto gsl = log_ground_state(s.spectrum, s.grid);
        const auto lb = laplacian_bounds_check(gsl, s.grid, s.field, metrics(s.grid), s.spectrum.lambda1);
        CHECK(lb.b1 == doctest::Approx(2.0));
        CHECK(lb.b1_alt == doctest::Approx(2.0));
        CHECK_FALSE(lb.curvature_unavailable);
        CHECK(lb.bound >= lb.b1);
        CHECK(lb.holds);
        CHECK(lb.max_boundary_grad_sq < 0.05);
    }
}

TEST_CASE("flat boundaries skip the curvature branch") {
    const auto s = solve(DomainSpec::interval(-2, 2, 257), PotentialSpec::double_well(1.0, -1.0),
                         BoundaryCondition::neumann);
    const auto gsl = log_ground_state(s.spectrum, s.grid);
    const auto lb = laplacian_bounds_check(gsl, s.grid, s.field, metrics(s.grid), s.spectrum.lambda1);
    CHECK(lb.curvature_unavailable);
    CHECK(std::isnan(lb.b2));
    CHECK(lb.bound == lb.b1);
    CHECK(std::isfinite(lb.margin));
}

TEST_CASE("polar diagnostics") {
    SUBCASE("radial potential") {
        const auto s = solve(DomainSpec::disk(1.0, 16, 32), PotentialSpec::harmonic(2.0), BoundaryCondition::neumann);
        const auto gsl = log_ground_state(s.spectrum, s.grid);
        const auto pd = polar_diagnostics(gsl, s.grid, s.field, s.spectrum.lambda1);
        CHECK(std::abs(pd.max_angular) < 1e-6);
        CHECK(pd.angular_bound == doctest::Approx(0.125));
        CHECK(pd.angular_margin > 0.0);
        CHECK(std::isfinite(pd.radial_margin));
    }
    SUBCASE("zero potential") {
        const auto s = solve(DomainSpec::disk(1.0, 16, 32), PotentialSpec::zero(), BoundaryCondition::neumann);
        const auto gsl = log_ground_state(s.spectrum, s.grid);
        const auto pd = polar_diagnostics(gsl, s.grid, s.field, s.spectrum.lambda1);
        CHECK(std::abs(pd.max_angular) < 1e-6);
        CHECK(std::abs(pd.max_radial) < 1e-6);
        CHECK(pd.angular_holds);
        CHECK(pd.radial_holds);
    }
    SUBCASE("tilted potential") {
        const auto s = solve(DomainSpec::disk(1.0, 16, 32), PotentialSpec::tilted({1.0, 0.0}),
                             BoundaryCondition::neumann);
        const auto gsl = log_ground_state(s.spectrum, s.grid);
        const auto pd = polar_diagnostics(gsl, s.grid, s.field, s.spectrum.lambda1);
        CHECK(std::isfinite(pd.angular_margin));
        CHECK(std::isfinite(pd.radial_margin));
        CHECK(pd.angular_bound > 0.125);
    }
    SUBCASE("non-disk grids") {
        const auto grid = build_grid(DomainSpec::interval(0, 1, 9));
        const auto gsl = log_ground_state(std::vector<double>(9, 1.0), grid);
        CHECK_THROWS_AS(polar_diagnostics(gsl, grid, sample(PotentialSpec::zero(), grid), 0.0), NotADisk);
        CHECK_THROWS_AS(growth_margin(gsl, grid), NotADisk);
    }
}

TEST_CASE("growth comparison") {
    SUBCASE("V = 0") {
        const auto s = solve(DomainSpec::disk(1.0, 16, 32), PotentialSpec::zero(), BoundaryCondition::neumann);
        const auto g = growth_check(log_ground_state(s.spectrum, s.grid), s.grid, s.field);
        CHECK(std::abs(g.margin) < 1e-10);
    }
    SUBCASE("inward gradient fails the gate") {
        const auto s = solve(DomainSpec::disk(1.0, 16, 32), PotentialSpec::double_well(1.0, -1.0),
                             BoundaryCondition::neumann);
        CHECK_THROWS_AS(growth_check(log_ground_state(s.spectrum, s.grid), s.grid, s.field), HypothesisFailed);
    }
    SUBCASE("outward gradient: the comparison fails at the center") {
        // With V = r^2 the statistic is 0 at r = 0 while -2 phi < 0 on the rim.
        const auto s = solve(DomainSpec::disk(1.0, 16, 32), PotentialSpec::harmonic(2.0), BoundaryCondition::neumann);
        const auto gsl = log_ground_state(s.spectrum, s.grid);
        const auto g = growth_check(gsl, s.grid, s.field);
        CHECK(g.statistic_max >= 0.0);
        CHECK(g.boundary_max == doctest::Approx(-2.0 * gsl.phi[s.grid.boundary_nodes()[0]]));
        CHECK(g.margin < 0.0);
    }
}

TEST_CASE("cutoff record") {
    SUBCASE("V = 0 on the unit interval") {
        const auto s = solve(DomainSpec::interval(0, 1, 257), PotentialSpec::zero(), BoundaryCondition::dirichlet);
        const auto gsl = log_ground_state(s.spectrum, s.grid);
        const auto c = cutoff_diagnostic(gsl, s.grid, s.field, s.spectrum.lambda1, BoundaryCondition::dirichlet);
        CHECK(c.applicable);
        // rho^2 pi^2 / sin^2(pi x) peaks at the center with value pi^2 / 4 and tends to 1 at the boundary.
        CHECK(c.sup_rho2_laplacian == doctest::Approx(pi * pi / 4).epsilon(1e-3));
        CHECK(c.sup_rho_lap_rho == -3.0);
        CHECK(c.sup_grad_rho_sq == 1.0);
        CHECK(c.sup_rho2_sqrt_lap_v == 0.0);
        CHECK(c.sup_grad_rho_sqrt_v == 0.0);
    }
    SUBCASE("Neumann is not applicable") {
        const auto s = solve(DomainSpec::interval(0, 1, 65), PotentialSpec::zero(), BoundaryCondition::neumann);
        const auto gsl = log_ground_state(s.spectrum, s.grid);
        CHECK_FALSE(cutoff_diagnostic(gsl, s.grid, s.field, s.spectrum.lambda1, BoundaryCondition::neumann).applicable);
    }
    SUBCASE("harmonic") {
        const auto s = solve(DomainSpec::interval(-4, 4, 257), PotentialSpec::harmonic(2.0),
                             BoundaryCondition::dirichlet);
        const auto gsl = log_ground_state(s.spectrum, s.grid);
        const auto c = cutoff_diagnostic(gsl, s.grid, s.field, s.spectrum.lambda1, BoundaryCondition::dirichlet);
        CHECK(std::isfinite(c.sup_rho2_laplacian));
        CHECK(std::isfinite(c.sup_rho2_sqrt_lap_v));
        CHECK(c.sup_grad_rho_sqrt_v > 0.0);
    }
}
