#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "gaplab/dense_eigen.hpp"
#include "gaplab/error.hpp"
#include "gaplab/spectrum.hpp"

using namespace gaplab;

namespace {

DiscreteOperator from_dense(const Eigen::MatrixXd& a) { return DiscreteOperator::from_matrix(a.sparseView()); }

DiscreteOperator make(const DomainSpec& spec, const PotentialSpec& pot, BoundaryCondition bc) {
    const auto grid = build_grid(spec);
    return assemble(grid, sample(pot, grid), bc);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

TEST_CASE("dense oracle closed forms") {
    Eigen::MatrixXd t(3, 3);
    t << 32, -16, 0, -16, 32, -16, 0, -16, 32;
    const auto e = dense_oracle(from_dense(t));
    CHECK(e[0] == doctest::Approx(16 * (2 - std::sqrt(2.0))).epsilon(1e-14));
    CHECK(e[1] == doctest::Approx(32.0).epsilon(1e-14));
    CHECK(e[2] == doctest::Approx(16 * (2 + std::sqrt(2.0))).epsilon(1e-14));

    const auto id = dense_oracle(from_dense(Eigen::MatrixXd::Identity(4, 4)));
    for (double v : id) CHECK(v == 1.0);

    const auto d = dense_oracle(from_dense(Eigen::Vector3d(3, 1, 2).asDiagonal().toDenseMatrix()));
    CHECK(d == std::vector<double>{1, 2, 3});
}

TEST_CASE("dense oracle size limit") {
    SparseMatrix big(2001, 2001);
    big.setIdentity();
    CHECK_THROWS_AS(dense_oracle(DiscreteOperator::from_matrix(big)), ConfigError);
}

TEST_CASE("Jacobi and QL agree on random symmetric matrices") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n : {1, 2, 5, 17, 40}) {
        Eigen::MatrixXd a(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = u(gen);
        }
        const auto jac = jacobi_eigen(a);
        const auto ql = tridiagonal_ql_eigenvalues(a);
        for (int k = 0; k < n; ++k) CHECK(jac.values[k] == doctest::Approx(ql[k]).epsilon(1e-12));
        const Eigen::MatrixXd recon = jac.vectors * jac.values.asDiagonal() * jac.vectors.transpose();
        CHECK((recon - a).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((jac.vectors.transpose() * jac.vectors - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("2x2 diagonal operator") {
    Eigen::MatrixXd a(2, 2);
    a << 1, 0, 0, 5;
    const auto s = smallest_two(from_dense(a));
    CHECK(s.lambda1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.lambda2 == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(s.u1[0] == doctest::Approx(1.0));
    CHECK(std::abs(s.u1[1]) < 1e-14);
    CHECK(std::abs(s.u2[0]) < 1e-14);
    CHECK(s.u2[1] == doctest::Approx(1.0));
}

TEST_CASE("1D Dirichlet V=0 at h=1/512") {
    const auto op = make(DomainSpec::interval(0, 1, 513), PotentialSpec::zero(), BoundaryCondition::dirichlet);
    const auto s = smallest_two(op, 1e-10, 10000, 24029);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    CHECK(s.lambda1 == doctest::Approx(pi2).epsilon(5e-4));
    CHECK(s.lambda2 == doctest::Approx(4 * pi2).epsilon(5e-4));
    CHECK(s.gap() == doctest::Approx(3 * pi2).epsilon(5e-4));
    CHECK(s.residual1 <= 1e-10);
    CHECK(s.residual2 <= 1e-10);
    CHECK(std::abs(dot(s.u1, s.u2)) <= 1e-10);
    CHECK(dot(s.u1, s.u1) == doctest::Approx(1.0).epsilon(1e-14));
    for (double v : s.u1) CHECK(v > 0.0);
    CHECK_FALSE(s.near_degenerate);
}

TEST_CASE("harmonic oscillator on [-8,8]") {
    const auto op = make(DomainSpec::interval(-8, 8, 16 * 64 + 1), PotentialSpec::harmonic(2.0),
                         BoundaryCondition::dirichlet);
    const auto s = smallest_two(op);
    CHECK(s.lambda1 == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(s.lambda2 == doctest::Approx(3.0).epsilon(1e-2));
    CHECK(s.gap() == doctest::Approx(2.0).epsilon(1e-2));
    for (double v : s.u1) CHECK(v > 0.0);
}

TEST_CASE("oracle agreement and determinism") {
    const std::vector<DiscreteOperator> ops = {
        make(DomainSpec::interval(0, 1, 200), PotentialSpec::zero(), BoundaryCondition::dirichlet),
        make(DomainSpec::interval(-2, 2, 300), PotentialSpec::double_well(1.0, -4.0), BoundaryCondition::neumann),
        make(DomainSpec::rectangle({0, 0}, {1, 1.5}, 16, 20), PotentialSpec::harmonic(3.0),
             BoundaryCondition::neumann),
        make(DomainSpec::rectangle({-1, -1}, {1, 1}, 20, 20), PotentialSpec::random_smooth(5, 2.0, 3.0),
             BoundaryCondition::dirichlet),
        make(DomainSpec::disk(1.0, 12, 32), PotentialSpec::harmonic(2.0), BoundaryCondition::neumann),
        make(DomainSpec::disk(1.0, 12, 32), PotentialSpec::tilted({1.0, 0.5}), BoundaryCondition::dirichlet),
    };
    for (const auto& op : ops) {
        REQUIRE(op.dofs() <= 400);
        const auto oracle = dense_oracle(op);
        const auto s = smallest_two(op);
        CHECK(std::abs(s.lambda1 - oracle[0]) <= 1e-8 * std::max(1.0, std::abs(oracle[0])));
        CHECK(std::abs(s.lambda2 - oracle[1]) <= 1e-8 * std::max(1.0, std::abs(oracle[1])));
        for (double v : s.u1) CHECK(v > 0.0);
        CHECK(std::abs(dot(s.u1, s.u2)) <= 1e-10);
        const auto again = smallest_two(op);
        CHECK(again.lambda1 == s.lambda1);
        CHECK(again.lambda2 == s.lambda2);
    }
}

TEST_CASE("eigenvector orientation") {
    const auto op = make(DomainSpec::interval(0, 1, 65), PotentialSpec::zero(), BoundaryCondition::neumann);
    const auto s = smallest_two(op);
    // u2/u1 ~ cos(pi x) peaks in magnitude at an end; orientation makes it positive there.
    double best = 0.0;
    double sign = 0.0;
    for (std::size_t i = 0; i < s.u1.size(); ++i) {
        const double r = s.u2[i] / s.u1[i];
        if (std::abs(r) > best) {
            best = std::abs(r);
            sign = r;
        }
    }
    CHECK(sign > 0.0);
}

TEST_CASE("degeneracy is flagged") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(4, 4);
    a(3, 3) = 2.0;
    const auto s = smallest_two(from_dense(a));
    CHECK(s.near_degenerate);
}

TEST_CASE("argument validation") {
    SparseMatrix one(1, 1);
    one.insert(0, 0) = 1.0;
    CHECK_THROWS_AS(smallest_two(DiscreteOperator::from_matrix(one)), ConfigError);
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(3, 3);
    CHECK_THROWS_AS(smallest_two(from_dense(a), 0.0), ConfigError);
}

TEST_CASE("no convergence reports residuals") {
    const auto op = make(DomainSpec::interval(0, 1, 400), PotentialSpec::zero(), BoundaryCondition::dirichlet);
    try {
        smallest_two(op, 1e-14, 1);
        FAIL("expected NoConvergence");
    } catch (const NoConvergence& e) {
        CHECK(e.iterations() == 1);
        CHECK(e.residual1() > 0.0);
    }
}

TEST_CASE("weighted quotient") {
    const auto grid = build_grid(DomainSpec::interval(0, 1, 257));
    const auto op = assemble(grid, sample(PotentialSpec::zero(), grid), BoundaryCondition::dirichlet);
    const auto s = smallest_two(op);

    SUBCASE("ratio of eigenfunctions recovers the gap") {
        std::vector<double> f(grid.size(), 0.0);
        for (std::size_t k = 1; k + 1 < grid.size(); ++k) f[k] = s.nodal2[k] / s.nodal1[k];
        const double q = weighted_rayleigh(f, s, op);
        CHECK(q == doctest::Approx(3 * std::numbers::pi * std::numbers::pi).epsilon(1e-2));
        CHECK(q == doctest::Approx(s.gap()).epsilon(1e-8));
    }
    SUBCASE("constants vanish under the projection") {
        const std::vector<double> f(grid.size(), 2.5);
        CHECK_THROWS_AS(weighted_rayleigh(f, s, op), ZeroDenominator);
    }
    SUBCASE("variational lower bound for seeded smooth f") {
        std::mt19937_64 gen(3);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const double h = grid.h_max();
        for (int trial = 0; trial < 100; ++trial) {
            double a[4];
            for (double& c : a) c = u(gen);
            std::vector<double> f(grid.size());
            for (std::size_t k = 0; k < grid.size(); ++k) {
                const double x = grid.point(k)[0];
                f[k] = a[0] * x + a[1] * std::cos(std::numbers::pi * x) + a[2] * x * x * x + a[3] * std::sin(5 * x);
            }
            CHECK(weighted_rayleigh(f, s, op) >= s.gap() - 10 * h * h);
        }
    }
    SUBCASE("length mismatch") {
        CHECK_THROWS_AS(weighted_rayleigh(std::vector<double>(3, 1.0), s, op), std::invalid_argument);
    }
}
