#include <algorithm>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "zeno/bath.hpp"
#include "zeno/eigen_symmetric.hpp"

using namespace zeno;

namespace {

Eigen::MatrixXd random_symmetric(Eigen::Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) a(i, j) = a(j, i) = dist(rng);
    return a;
}

void expect_valid(const Eigen::MatrixXd& h, const SpectralDecomposition& sd) {
    EXPECT_LE(orthogonality_error(sd), 1e-10);
    EXPECT_LE(eigen_residual(h, sd), 1e-9 * std::max(1.0, h.cwiseAbs().maxCoeff()));
    for (Eigen::Index j = 1; j < sd.size(); ++j) EXPECT_LE(sd.eigenvalues(j - 1), sd.eigenvalues(j));
}

} // namespace

TEST(EigenSymmetric, TwoByTwoBlock) {
    Eigen::MatrixXd h(2, 2);
    h << 100.0, 1.0, 1.0, 100.0;
    const auto sd = eigendecompose(h);
    EXPECT_NEAR(sd.eigenvalues(0), 99.0, 1e-12);
    EXPECT_NEAR(sd.eigenvalues(1), 101.0, 1e-12);
    expect_valid(h, sd);
}

TEST(EigenSymmetric, OneByOneAndDiagonal) {
    Eigen::MatrixXd one(1, 1);
    one << 3.5;
    EXPECT_EQ(eigendecompose(one).eigenvalues(0), 3.5);

    Eigen::MatrixXd d = Eigen::Vector4d(4.0, -1.0, 2.0, 2.0).asDiagonal();
    const auto sd = eigendecompose(d);
    EXPECT_EQ(sd.eigenvalues, Eigen::Vector4d(-1.0, 2.0, 2.0, 4.0));
    expect_valid(d, sd);
}

// Independent check: Eigen's own self-adjoint solver on random matrices of several sizes.
TEST(EigenSymmetric, MatchesReferenceSolverOnRandomMatrices) {
    for (Eigen::Index n : {3, 7, 32, 101}) {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const Eigen::MatrixXd h = random_symmetric(n, seed * 1000 + static_cast<std::uint64_t>(n));
            const auto sd = eigendecompose(h);
            expect_valid(h, sd);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(h);
            EXPECT_LE((sd.eigenvalues - ref.eigenvalues()).cwiseAbs().maxCoeff(), 1e-11 * n);
        }
    }
}

TEST(EigenSymmetric, DegenerateSpectrum) {
    // I + rank-one: eigenvalue 1 with multiplicity n-1.
    Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(6, 1.0, 6.0);
    const Eigen::MatrixXd h = Eigen::MatrixXd::Identity(6, 6) + v * v.transpose();
    const auto sd = eigendecompose(h);
    expect_valid(h, sd);
    for (Eigen::Index j = 0; j < 5; ++j) EXPECT_NEAR(sd.eigenvalues(j), 1.0, 1e-12);
    EXPECT_NEAR(sd.eigenvalues(5), 1.0 + v.squaredNorm(), 1e-10);
}

TEST(EigenSymmetric, Deterministic) {
    const Eigen::MatrixXd h = random_symmetric(40, 99);
    const auto a = eigendecompose(h);
    const auto b = eigendecompose(h);
    EXPECT_EQ(a.eigenvalues, b.eigenvalues);
    EXPECT_EQ(a.eigenvectors, b.eigenvectors);
}

TEST(EigenSymmetric, RejectsAsymmetricAndNonSquare) {
    Eigen::MatrixXd h(2, 2);
    h << 1.0, 2.0, 2.0 + 1e-15, 1.0;
    EXPECT_THROW(eigendecompose(h), DomainError);
    EXPECT_THROW(eigendecompose(Eigen::MatrixXd::Zero(2, 3)), DomainError);
}

TEST(EigenSymmetric, IterationBudgetExhaustionIsNumericalError) {
    const Eigen::MatrixXd h = random_symmetric(20, 5);
    try {
        eigendecompose(h, 0);
        FAIL() << "expected NumericalError";
    } catch (const NumericalError& e) {
        EXPECT_NE(std::string(e.what()).find("residual"), std::string::npos);
    }
}

TEST(EigenSymmetric, FullSizeBathMatrixResidual) {
    BathSpec spec;
    spec.gamma = gamma_from_eta(2.0, spec.delta);
    const Eigen::MatrixXd h = bath::build_hamiltonian(spec).entries;
    const auto sd = eigendecompose(h);
    expect_valid(h, sd);
    const Eigen::MatrixXd recon = sd.eigenvectors * sd.eigenvalues.asDiagonal() * sd.eigenvectors.transpose();
    EXPECT_LE((recon - h).cwiseAbs().maxCoeff(), 1e-9 * h.cwiseAbs().maxCoeff());
}
