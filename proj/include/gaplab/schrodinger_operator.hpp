#pragma once

#include <Eigen/SparseCore>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gaplab/geometry.hpp"
#include "gaplab/potential.hpp"

namespace gaplab {

enum class BoundaryCondition { dirichlet, neumann };

std::string to_string(BoundaryCondition bc);
BoundaryCondition boundary_condition_from_string(const std::string& name);

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;

/// Edge of the discretization graph: symmetric coupling weight between two nodes.
struct Coupling {
    std::size_t a;
    std::size_t b;
    double conductance;
};

/**
 * Symmetric matrix of -Laplacian + V over the degrees of freedom.
 *
 * The stencils are written in flux form S u = sum_edges g_ab (u_a - u_b) + w V u
 * with nodal quadrature weights w, so the nodal operator is W^{-1} S. The stored
 * matrix is A = W^{-1/2} S W^{-1/2}; eigenvectors of A map back to nodal values
 * through W^{-1/2} (to_nodal).
 */
class DiscreteOperator {
public:
    /// Wraps an explicit symmetric matrix with unit weights and no grid.
    static DiscreteOperator from_matrix(SparseMatrix matrix);

    const SparseMatrix& matrix() const noexcept { return matrix_; }
    std::size_t dofs() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
    BoundaryCondition bc() const noexcept { return bc_; }
    bool has_grid() const noexcept { return grid_nodes_ > 0; }
    std::size_t grid_nodes() const noexcept { return grid_nodes_; }

    /// Grid node of each degree of freedom.
    std::span<const std::size_t> dof_to_node() const noexcept { return dof_to_node_; }
    /// Degree of freedom of a grid node, or nullopt for eliminated Dirichlet nodes.
    std::optional<std::size_t> node_to_dof(std::size_t node) const;
    /// Quadrature weight of each degree of freedom.
    std::span<const double> weights() const noexcept { return weights_; }
    /// Edges of the Laplacian part between two degrees of freedom (indices are dofs).
    std::span<const Coupling> couplings() const noexcept { return couplings_; }

    std::vector<double> apply(std::span<const double> v) const;

    /// Nodal values W^{-1/2} v on the full grid; eliminated nodes are zero.
    std::vector<double> to_nodal(std::span<const double> v) const;

    /// Gershgorin interval [lower, upper] of the spectrum, from the discs of the nodal matrix W^{-1} S.
    std::array<double, 2> gershgorin() const;

    /// Writes "row col value" per nonzero, 0-based, %.17g, sorted by (row, col).
    void write_matrix(std::ostream& out) const;

private:
    friend DiscreteOperator assemble(const DomainGrid&, const PotentialField&, BoundaryCondition);
    DiscreteOperator() = default;

    SparseMatrix matrix_;
    BoundaryCondition bc_ = BoundaryCondition::dirichlet;
    std::size_t grid_nodes_ = 0;
    std::vector<std::size_t> dof_to_node_;
    std::vector<std::ptrdiff_t> node_to_dof_;
    std::vector<double> weights_;
    std::vector<Coupling> couplings_;
};

/// Throws ConfigError when grid and field disagree in size.
DiscreteOperator assemble(const DomainGrid& grid, const PotentialField& field, BoundaryCondition bc);

}  // namespace gaplab
