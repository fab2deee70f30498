#include "gaplab/spectrum.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "gaplab/dense_eigen.hpp"
#include "gaplab/error.hpp"

namespace gaplab {

namespace {

constexpr Eigen::Index kBlockSize = 8;

double unit_uniform(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

double infinity_norm(const SparseMatrix& a) {
    Eigen::VectorXd rows = Eigen::VectorXd::Zero(a.rows());
    for (int col = 0; col < a.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(a, col); it; ++it) rows[it.row()] += std::abs(it.value());
    }
    return rows.size() ? rows.maxCoeff() : 0.0;
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& y) {
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(y);
    return qr.householderQ() * Eigen::MatrixXd::Identity(y.rows(), y.cols());
}

struct Pair {
    double lambda;
    double residual;
};

Pair rayleigh(const SparseMatrix& a, const Eigen::VectorXd& x, double scale) {
    const Eigen::VectorXd ax = a * x;
    const double lambda = x.dot(ax);
    return {lambda, (ax - lambda * x).norm() / scale};
}

// Index of the entry of largest magnitude; first one wins ties.
Eigen::Index argmax_abs(const Eigen::VectorXd& x) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < x.size(); ++i) {
        if (std::abs(x[i]) > std::abs(x[best])) best = i;
    }
    return best;
}

}  // namespace

SpectrumResult smallest_two(const DiscreteOperator& op, double tol, int max_iter, std::uint64_t seed) {
    const auto n = static_cast<Eigen::Index>(op.dofs());
    if (n < 2) throw ConfigError("smallest_two requires at least 2 degrees of freedom");
    if (!(tol > 0.0)) throw ConfigError("smallest_two requires tol > 0");
    if (max_iter < 1) throw ConfigError("smallest_two requires max_iter >= 1");

    const SparseMatrix& a = op.matrix();
    const double scale = std::max(1.0, infinity_norm(a));
    const double sigma = op.gershgorin()[0] - 1.0;

    SparseMatrix shifted = a;
    for (Eigen::Index i = 0; i < n; ++i) shifted.coeffRef(i, i) -= sigma;
    Eigen::SimplicialLDLT<SparseMatrix> solver(shifted);
    if (solver.info() != Eigen::Success) throw SolverError("factorization of the shifted operator failed");

    const Eigen::Index p = std::min(n, kBlockSize);
    std::mt19937_64 gen(seed);
    Eigen::MatrixXd x(n, p);
    for (Eigen::Index j = 0; j < p; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) x(i, j) = 2.0 * unit_uniform(gen) - 1.0;
    }
    x = orthonormalize(x);

    SpectrumResult out;
    out.matrix_norm = scale;
    Pair first{}, second{};
    bool converged = false;
    int it = 0;
    auto sweep = [&] {
        ++it;
        const Eigen::MatrixXd q = orthonormalize(solver.solve(x));
        const Eigen::MatrixXd aq = a * q;
        Eigen::MatrixXd h = q.transpose() * aq;
        h = 0.5 * (h + h.transpose());
        const SymmetricEigen ritz = jacobi_eigen(h);
        x = q * ritz.vectors;
        first = rayleigh(a, x.col(0), scale);
        second = rayleigh(a, x.col(1), scale);
    };
    while (it < max_iter) {
        sweep();
        if (first.residual <= tol && second.residual <= tol) {
            converged = true;
            break;
        }
    }
    if (converged) {
        // Refine past tol while the residual keeps halving; derived fields difference the eigenvectors.
        constexpr int kRefineSweeps = 30;
        for (int extra = 0; extra < kRefineSweeps && it < max_iter; ++extra) {
            const Eigen::MatrixXd keep = x;
            const Pair keep1 = first, keep2 = second;
            const double before = std::max(first.residual, second.residual);
            sweep();
            if (std::max(first.residual, second.residual) > 0.5 * before) {
                if (std::max(first.residual, second.residual) > before) {
                    x = keep;
                    first = keep1;
                    second = keep2;
                }
                break;
            }
        }
    }
    if (!converged) {
        throw NoConvergence("smallest_two: no convergence after " + std::to_string(it) + " iterations (residuals " +
                                std::to_string(first.residual) + ", " + std::to_string(second.residual) + ")",
                            first.residual, second.residual, it);
    }

    Eigen::VectorXd u1 = x.col(0).normalized();
    Eigen::VectorXd u2 = x.col(1).normalized();

    if (u1[argmax_abs(u1)] < 0.0) u1 = -u1;
    if (op.has_grid() && u1.minCoeff() <= 0.0) {
        // (A - sigma I)^{-1} is entrywise positive for the grid operators, so one step from |u1| fixes stray signs.
        u1 = solver.solve(Eigen::VectorXd(u1.cwiseAbs())).normalized();
        u2 -= u1.dot(u2) * u1;
        u2.normalize();
        out.positivity_polished = true;
        if (u1.minCoeff() <= 0.0) throw SolverError("ground state is not positive at every degree of freedom");
    }

    // Orient u2 so that u2/u1 is positive where |u2/u1| peaks; tails where u1 is at noise level are ignored.
    Eigen::Index pivot = -1;
    double best = -1.0;
    const double floor = 1e-6 * u1.maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(u1[i] > floor)) continue;
        const double ratio = std::abs(u2[i] / u1[i]);
        if (ratio > best) {
            best = ratio;
            pivot = i;
        }
    }
    if (pivot < 0) pivot = argmax_abs(u2);
    if (u2[pivot] < 0.0) u2 = -u2;

    first = rayleigh(a, u1, scale);
    second = rayleigh(a, u2, scale);
    out.lambda1 = first.lambda;
    out.lambda2 = second.lambda;
    out.residual1 = first.residual;
    out.residual2 = second.residual;
    out.iterations = it;
    out.near_degenerate = (out.lambda2 - out.lambda1) < 10.0 * tol;
    out.u1.assign(u1.data(), u1.data() + n);
    out.u2.assign(u2.data(), u2.data() + n);
    out.nodal1 = op.to_nodal(out.u1);
    out.nodal2 = op.to_nodal(out.u2);
    return out;
}

std::vector<double> dense_oracle(const DiscreteOperator& op) {
    if (op.dofs() > kDenseOracleLimit) {
        throw ConfigError("dense_oracle: " + std::to_string(op.dofs()) + " degrees of freedom exceed the limit of " +
                          std::to_string(kDenseOracleLimit));
    }
    return tridiagonal_ql_eigenvalues(Eigen::MatrixXd(op.matrix()));
}

double weighted_rayleigh(std::span<const double> f, const SpectrumResult& spectrum, const DiscreteOperator& op) {
    const std::size_t n = op.dofs();
    if (spectrum.u1.size() != n) throw std::invalid_argument("weighted_rayleigh: spectrum does not match operator");
    const bool nodal = op.has_grid() && f.size() == op.grid_nodes();
    if (!nodal && f.size() != n) {
        throw std::invalid_argument("weighted_rayleigh: f has " + std::to_string(f.size()) +
                                    " entries, expected grid nodes or degrees of freedom");
    }
    const auto weights = op.weights();
    const auto nodes = op.dof_to_node();

    std::vector<double> u(n), g(n);
    double mass = 0.0, moment = 0.0;
    for (std::size_t d = 0; d < n; ++d) {
        u[d] = spectrum.u1[d] / std::sqrt(weights[d]);
        g[d] = nodal ? f[nodes[d]] : f[d];
        if (!std::isfinite(g[d])) throw std::invalid_argument("weighted_rayleigh: f is not finite");
        const double m = weights[d] * u[d] * u[d];
        mass += m;
        moment += m * g[d];
    }
    const double mean = moment / mass;

    double before = 0.0, denominator = 0.0;
    for (std::size_t d = 0; d < n; ++d) {
        const double m = weights[d] * u[d] * u[d];
        before += m * g[d] * g[d];
        g[d] -= mean;
        denominator += m * g[d] * g[d];
    }
    if (!(before > 0.0) || denominator <= 1e-24 * before) {
        throw ZeroDenominator("weighted_rayleigh: f vanishes after projection onto the weighted complement");
    }

    double numerator = 0.0;
    for (const auto& e : op.couplings()) {
        const double df = g[e.a] - g[e.b];
        numerator += e.conductance * u[e.a] * u[e.b] * df * df;
    }
    return numerator / denominator;
}

}  // namespace gaplab
