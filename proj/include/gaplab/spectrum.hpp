#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gaplab/schrodinger_operator.hpp"

namespace gaplab {

inline constexpr std::size_t kDenseOracleLimit = 2000;

struct SpectrumResult {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    /// Unit eigenvectors of the symmetric matrix, over degrees of freedom.
    std::vector<double> u1;
    std::vector<double> u2;
    /// Nodal values over the grid (W^{-1/2} u), zero at eliminated nodes.
    std::vector<double> nodal1;
    std::vector<double> nodal2;
    /// ||A u - lambda u||_2 / max(1, ||A||_inf).
    double residual1 = 0.0;
    double residual2 = 0.0;
    double matrix_norm = 0.0;
    int iterations = 0;
    bool near_degenerate = false;
    /// u1 needed an extra inverse-iteration step to become positive.
    bool positivity_polished = false;

    double gap() const noexcept { return lambda2 - lambda1; }
};

/**
 * Two smallest eigenpairs by block shift-invert subspace iteration.
 *
 * The shift is the Gershgorin lower bound minus one, A - sigma I is factored once,
 * and each sweep is followed by Rayleigh-Ritz on the block. Converged when both
 * relative residuals are at most tol. Throws NoConvergence after max_iter sweeps.
 */
SpectrumResult smallest_two(const DiscreteOperator& op, double tol = 1e-10, int max_iter = 10000,
                            std::uint64_t seed = 24029);

/// Full spectrum, ascending, by dense tridiagonal QL. Rejects more than kDenseOracleLimit dofs.
std::vector<double> dense_oracle(const DiscreteOperator& op);

/**
 * Weighted quotient sum g_ab u_a u_b (f_a - f_b)^2 / sum w f^2 u^2 with u the ground
 * state, after projecting f onto {sum w f u^2 = 0}. f is nodal (grid size) or per dof.
 * Throws ZeroDenominator when nothing survives the projection.
 */
double weighted_rayleigh(std::span<const double> f, const SpectrumResult& spectrum, const DiscreteOperator& op);

}  // namespace gaplab
