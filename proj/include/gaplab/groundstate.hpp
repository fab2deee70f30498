#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "gaplab/geometry.hpp"
#include "gaplab/potential.hpp"
#include "gaplab/schrodinger_operator.hpp"
#include "gaplab/spectrum.hpp"
#include "gaplab/stencil.hpp"
#include "gaplab/sym2.hpp"

namespace gaplab {

struct MaskOptions {
    /// Nodes with u1 < delta * sup u1 are excluded.
    double delta = 1e-6;
    /// Minimum physical distance to the boundary; NaN selects default_boundary_offset().
    double boundary_offset = std::numeric_limits<double>::quiet_NaN();
};

/// Two spacings normal to the boundary: 2 h for lattices, 2 dr for the disk.
double default_boundary_offset(const DomainGrid& grid);

/// 20 h^2 + 1e-6 with h = grid.h_max().
double check_tolerance(const DomainGrid& grid);

/// phi = -log(u1 / sup u1) with central-difference derivative fields on the mask.
struct GroundStateLog {
    int dimension = 1;
    double delta = 0.0;
    double boundary_offset = 0.0;
    /// Sup-normalized ground state per node.
    std::vector<double> u;
    /// +inf where u <= 0.
    std::vector<double> phi;
    /// Derivative fields; NaN off the mask.
    std::vector<Point> gradient;
    std::vector<Sym2> hessian;
    std::vector<double> laplacian;
    /// Polar partials on disk ring nodes of the mask.
    std::vector<std::optional<PolarParts>> polar;
    std::vector<std::uint8_t> mask;
    std::vector<std::size_t> masked;

    bool in_mask(std::size_t node) const { return mask[node] != 0; }
};

/// Throws ConfigError for delta outside (0, 1) and EmptyMask when no node qualifies.
GroundStateLog log_ground_state(std::span<const double> u1_nodal, const DomainGrid& grid, const MaskOptions& options = {});
GroundStateLog log_ground_state(const SpectrumResult& spectrum, const DomainGrid& grid, const MaskOptions& options = {});

/// max over the mask of |Laplacian(phi) - |grad phi|^2 + V - lambda1|.
double phi_identity_residual(const GroundStateLog& gsl, const PotentialField& field, double lambda1);

struct HessianExtrema {
    /// Smallest Hessian eigenvalue over the mask.
    double hess_min = 0.0;
    /// Smallest diagonal Hessian entry over the mask and axes.
    double hess_diag_min = 0.0;
    std::size_t argmin = 0;
};

HessianExtrema hessian_extrema(const GroundStateLog& gsl);

/// Upper bounds on Laplacian(phi) for Neumann runs, checked as a disjunction of two branches.
struct LaplacianBounds {
    double max_laplacian = 0.0;
    /// max over boundary nodes of |grad phi|^2 from one-sided and tangential differences.
    double max_boundary_grad_sq = 0.0;
    /// max over boundary nodes of (1/lambda_min) dV/dnu; NaN without curvature.
    double boundary_grad_bound = std::numeric_limits<double>::quiet_NaN();
    /// Interior branch sqrt(n sup(Laplacian V)_+ / 2).
    double b1 = 0.0;
    /// Alternative interior prefactor: (n/2) sqrt(sup(Laplacian V)_+).
    double b1_alt = 0.0;
    /// Boundary branch sup((1/lambda_min) dV/dnu - V) + lambda1; NaN without curvature.
    double b2 = std::numeric_limits<double>::quiet_NaN();
    bool curvature_unavailable = false;
    double bound = 0.0;
    double margin = 0.0;
    bool holds = false;
};

LaplacianBounds laplacian_bounds_check(const GroundStateLog& gsl, const DomainGrid& grid, const PotentialField& field,
                                       const DomainMetrics& metrics, double lambda1);

struct PolarDiagnostics {
    /// max over the mask of d^2 phi / d theta^2.
    double max_angular = 0.0;
    double angular_bound = 0.0;
    double angular_margin = 0.0;
    bool angular_holds = false;
    /// max over the mask of r d/dr (r d phi/dr).
    double max_radial = 0.0;
    double radial_interior_bound = 0.0;
    double radial_boundary_bound = 0.0;
    double radial_margin = 0.0;
    bool radial_holds = false;
};

/// Throws NotADisk on other grids.
PolarDiagnostics polar_diagnostics(const GroundStateLog& gsl, const DomainGrid& grid, const PotentialField& field,
                                   double lambda1);

struct GrowthResult {
    /// max over the mask of r d phi/dr - 2 phi.
    double statistic_max = 0.0;
    /// max over the boundary of -2 phi.
    double boundary_max = 0.0;
    /// boundary_max - statistic_max.
    double margin = 0.0;
};

/// The growth comparison without the hypothesis gate. Throws NotADisk.
GrowthResult growth_margin(const GroundStateLog& gsl, const DomainGrid& grid);

/// Gated on r dV/dr >= 0 at every node; throws HypothesisFailed otherwise.
GrowthResult growth_check(const GroundStateLog& gsl, const DomainGrid& grid, const PotentialField& field);

/// Quantities controlling rho^2 Laplacian(phi) with rho the distance to the boundary.
struct CutoffRecord {
    bool applicable = false;
    double sup_rho2_laplacian = 0.0;
    double sup_rho_lap_rho = 0.0;
    double sup_grad_rho_sq = 0.0;
    double sup_rho2_sqrt_lap_v = 0.0;
    double sup_grad_rho_sqrt_v = 0.0;
};

/// Not applicable (applicable = false) for Neumann spectra.
CutoffRecord cutoff_diagnostic(const GroundStateLog& gsl, const DomainGrid& grid, const PotentialField& field,
                               double lambda1, BoundaryCondition bc);

}  // namespace gaplab
