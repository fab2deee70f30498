#include "gaplab/schrodinger_operator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "gaplab/error.hpp"

namespace gaplab {

std::string to_string(BoundaryCondition bc) { return bc == BoundaryCondition::dirichlet ? "dirichlet" : "neumann"; }

BoundaryCondition boundary_condition_from_string(const std::string& name) {
    if (name == "dirichlet") return BoundaryCondition::dirichlet;
    if (name == "neumann") return BoundaryCondition::neumann;
    throw ConfigError("unknown boundary condition '" + name + "'");
}

namespace {

struct FluxForm {
    std::vector<double> weights;  // per grid node
    std::vector<Coupling> edges;  // grid node indices
};

// Ghost-node reflection at a Neumann face halves the boundary weight, which makes
// the reflected stencil symmetric in flux form.
double axis_weight(int i, int n, double h, BoundaryCondition bc) {
    if (bc == BoundaryCondition::neumann && (i == 0 || i == n - 1)) return 0.5 * h;
    return h;
}

FluxForm lattice_flux(const DomainGrid& grid, BoundaryCondition bc) {
    FluxForm ff;
    ff.weights.resize(grid.size());
    if (grid.kind() == DomainKind::interval) {
        const int n = grid.spec().resolution[0];
        const double h = grid.spacing()[0];
        for (int i = 0; i < n; ++i) ff.weights[i] = axis_weight(i, n, h, bc);
        for (int i = 0; i + 1 < n; ++i) ff.edges.push_back({grid.flat(i, 0), grid.flat(i + 1, 0), 1.0 / h});
        return ff;
    }
    const int nx = grid.spec().resolution[0];
    const int ny = grid.spec().resolution[1];
    const double hx = grid.spacing()[0];
    const double hy = grid.spacing()[1];
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const double wx = axis_weight(i, nx, hx, bc);
            const double wy = axis_weight(j, ny, hy, bc);
            ff.weights[grid.flat(i, j)] = wx * wy;
            if (i + 1 < nx) ff.edges.push_back({grid.flat(i, j), grid.flat(i + 1, j), wy / hx});
            if (j + 1 < ny) ff.edges.push_back({grid.flat(i, j), grid.flat(i, j + 1), wx / hy});
        }
    }
    return ff;
}

FluxForm disk_flux(const DomainGrid& grid, BoundaryCondition bc) {
    FluxForm ff;
    const int nr = grid.spec().resolution[0];
    const int nt = grid.spec().resolution[1];
    const double dr = grid.spacing()[0];
    const double dt = grid.spacing()[1];
    const double radius = grid.spec().radius;
    ff.weights.resize(grid.size());

    // Center cell is the disk of radius dr/2; its flux through r = dr/2 splits evenly over the rays.
    ff.weights[0] = std::numbers::pi * dr * dr / 4.0;
    for (int j = 0; j < nt; ++j) ff.edges.push_back({0, grid.flat(1, j), 0.5 * dt});

    for (int i = 1; i <= nr; ++i) {
        const double r = (i == nr) ? radius : i * dr;
        const bool rim = (i == nr);
        // Neumann rim: ghost reflection u_{nr+1} = u_{nr-1}, symmetrized with weight r_{nr-1/2} dr dt / 2.
        const double w = rim ? (bc == BoundaryCondition::neumann ? 0.5 * (radius - 0.5 * dr) * dr * dt : r * dr * dt)
                             : r * dr * dt;
        const double angular = w / (r * r * dt * dt);
        for (int j = 0; j < nt; ++j) {
            const std::size_t k = grid.flat(i, j);
            ff.weights[k] = w;
            ff.edges.push_back({k, grid.flat(i, j + 1), angular});
            if (i < nr) ff.edges.push_back({k, grid.flat(i + 1, j), (i + 0.5) * dr * dt / dr});
        }
    }
    return ff;
}

}  // namespace

DiscreteOperator assemble(const DomainGrid& grid, const PotentialField& field, BoundaryCondition bc) {
    if (field.values.size() != grid.size()) {
        throw ConfigError("potential field has " + std::to_string(field.values.size()) + " values but grid has " +
                          std::to_string(grid.size()) + " nodes");
    }
    if (grid.kind() == DomainKind::disk && bc == BoundaryCondition::neumann && grid.spec().resolution[1] < 8) {
        throw ConfigError("Neumann disk requires at least 8 angular nodes");
    }

    const FluxForm ff = grid.kind() == DomainKind::disk ? disk_flux(grid, bc) : lattice_flux(grid, bc);

    DiscreteOperator op;
    op.bc_ = bc;
    op.grid_nodes_ = grid.size();
    op.node_to_dof_.assign(grid.size(), -1);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (bc == BoundaryCondition::dirichlet && grid.is_boundary(k)) continue;
        op.node_to_dof_[k] = static_cast<std::ptrdiff_t>(op.dof_to_node_.size());
        op.dof_to_node_.push_back(k);
        op.weights_.push_back(ff.weights[k]);
    }
    const std::size_t n = op.dof_to_node_.size();

    std::vector<double> diag(n, 0.0);
    for (std::size_t d = 0; d < n; ++d) diag[d] = op.weights_[d] * field.values[op.dof_to_node_[d]];

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(2 * ff.edges.size() + n);
    for (const auto& e : ff.edges) {
        const auto da = op.node_to_dof_[e.a];
        const auto db = op.node_to_dof_[e.b];
        // An edge into an eliminated Dirichlet node keeps only its diagonal contribution.
        if (da >= 0) diag[da] += e.conductance;
        if (db >= 0) diag[db] += e.conductance;
        if (da >= 0 && db >= 0) {
            const double scaled = -e.conductance / std::sqrt(op.weights_[da] * op.weights_[db]);
            triplets.emplace_back(da, db, scaled);
            triplets.emplace_back(db, da, scaled);
            op.couplings_.push_back({static_cast<std::size_t>(da), static_cast<std::size_t>(db), e.conductance});
        }
    }
    for (std::size_t d = 0; d < n; ++d) triplets.emplace_back(d, d, diag[d] / op.weights_[d]);

    op.matrix_.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    op.matrix_.setFromTriplets(triplets.begin(), triplets.end());
    op.matrix_.makeCompressed();
    return op;
}

DiscreteOperator DiscreteOperator::from_matrix(SparseMatrix matrix) {
    if (matrix.rows() != matrix.cols()) throw ConfigError("operator matrix must be square");
    DiscreteOperator op;
    op.matrix_ = std::move(matrix);
    op.matrix_.makeCompressed();
    const std::size_t n = static_cast<std::size_t>(op.matrix_.rows());
    op.weights_.assign(n, 1.0);
    op.dof_to_node_.resize(n);
    for (std::size_t i = 0; i < n; ++i) op.dof_to_node_[i] = i;
    for (int col = 0; col < op.matrix_.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(op.matrix_, col); it; ++it) {
            if (it.row() < it.col()) {
                op.couplings_.push_back({static_cast<std::size_t>(it.row()), static_cast<std::size_t>(it.col()),
                                         -it.value()});
            }
        }
    }
    return op;
}

std::optional<std::size_t> DiscreteOperator::node_to_dof(std::size_t node) const {
    if (!has_grid()) {
        if (node < dofs()) return node;
        return std::nullopt;
    }
    const auto d = node_to_dof_.at(node);
    if (d < 0) return std::nullopt;
    return static_cast<std::size_t>(d);
}

std::vector<double> DiscreteOperator::apply(std::span<const double> v) const {
    if (v.size() != dofs()) {
        throw std::invalid_argument("apply: vector length " + std::to_string(v.size()) + " does not match " +
                                    std::to_string(dofs()) + " degrees of freedom");
    }
    const Eigen::Map<const Eigen::VectorXd> x(v.data(), static_cast<Eigen::Index>(v.size()));
    const Eigen::VectorXd y = matrix_ * x;
    return {y.data(), y.data() + y.size()};
}

std::vector<double> DiscreteOperator::to_nodal(std::span<const double> v) const {
    if (v.size() != dofs()) throw std::invalid_argument("to_nodal: length mismatch");
    std::vector<double> out(has_grid() ? grid_nodes_ : dofs(), 0.0);
    for (std::size_t d = 0; d < dofs(); ++d) out[dof_to_node_[d]] = v[d] / std::sqrt(weights_[d]);
    return out;
}

std::array<double, 2> DiscreteOperator::gershgorin() const {
    std::vector<double> diag(dofs(), 0.0);
    std::vector<double> radius(dofs(), 0.0);
    for (int col = 0; col < matrix_.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(matrix_, col); it; ++it) {
            if (it.row() == it.col()) {
                diag[it.row()] += it.value();
            } else {
                // Discs of the similar nodal matrix W^{-1/2} A W^{1/2}; far tighter when weights vary.
                radius[it.row()] += std::abs(it.value()) * std::sqrt(weights_[it.col()] / weights_[it.row()]);
            }
        }
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dofs(); ++i) {
        lo = std::min(lo, diag[i] - radius[i]);
        hi = std::max(hi, diag[i] + radius[i]);
    }
    return {lo, hi};
}

void DiscreteOperator::write_matrix(std::ostream& out) const {
    // Row-major order over a column-major store: transpose first.
    const Eigen::SparseMatrix<double, Eigen::RowMajor> rows = matrix_;
    char buf[96];
    for (int r = 0; r < rows.outerSize(); ++r) {
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(rows, r); it; ++it) {
            std::snprintf(buf, sizeof buf, "%d %d %.17g\n", static_cast<int>(it.row()), static_cast<int>(it.col()),
                          it.value());
            out << buf;
        }
    }
}

}  // namespace gaplab
