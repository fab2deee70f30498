#pragma once

#include <optional>
#include <span>

#include "gaplab/geometry.hpp"
#include "gaplab/sym2.hpp"

namespace gaplab {

/// Polar partial derivatives at a disk node (r > 0).
struct PolarParts {
    double r = 0.0;
    double f_r = 0.0;
    double f_t = 0.0;
    double f_rr = 0.0;
    double f_tt = 0.0;
    double f_rt = 0.0;
};

/// Second-order central-difference derivatives of a nodal field, in Cartesian components.
struct LocalDerivatives {
    Point gradient{0.0, 0.0};
    Sym2 hessian;
    double laplacian = 0.0;
    /// Present on disk ring nodes; absent at the center and on other grids.
    std::optional<PolarParts> polar;
};

/// True when every stencil neighbor of the node exists (non-boundary nodes).
bool has_full_stencil(const DomainGrid& grid, std::size_t node);

/**
 * Central differences at a node with a full stencil.
 *
 * Rectangles use the 5-point Laplacian and a 4-point cross for the mixed term.
 * Disk ring nodes difference in (r, theta) and rotate the polar Hessian into
 * Cartesian axes; the disk center fits the quadratic through opposite rays of
 * ring 1. Throws std::invalid_argument for nodes without a full stencil.
 */
LocalDerivatives local_derivatives(const DomainGrid& grid, std::span<const double> f, std::size_t node);

/// Tangential derivative along the boundary at a boundary node (0 at corners and in 1D).
double tangential_derivative(const DomainGrid& grid, std::span<const double> f, std::size_t node);

/**
 * One-sided second-order derivative along the inward lattice line from a
 * boundary node, signed as the outward normal derivative.
 * Rectangle corners differentiate along the x axis.
 */
double normal_derivative(const DomainGrid& grid, std::span<const double> f, std::size_t node);

/// The three nodes on the inward lattice line behind a boundary node (nearest first).
std::array<std::size_t, 3> inward_line(const DomainGrid& grid, std::size_t node);

/// Spacing along the inward lattice line of a boundary node.
double inward_spacing(const DomainGrid& grid, std::size_t node);

}  // namespace gaplab
