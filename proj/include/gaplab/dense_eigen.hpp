#pragma once

#include <Eigen/Dense>
#include <vector>

namespace gaplab {

struct SymmetricEigen {
    /// Ascending.
    Eigen::VectorXd values;
    /// Column k is the unit eigenvector of values[k].
    Eigen::MatrixXd vectors;
};

/// Cyclic Jacobi rotations; suited to the small projected matrices of the iterative solver.
SymmetricEigen jacobi_eigen(Eigen::MatrixXd a);

/// Householder tridiagonalization followed by implicit QL with Wilkinson-type shifts. Eigenvalues only, ascending.
std::vector<double> tridiagonal_ql_eigenvalues(Eigen::MatrixXd a);

}  // namespace gaplab
