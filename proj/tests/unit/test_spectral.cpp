#include <doctest.h>

#include "helpers.hpp"
#include "qsync/spectral.hpp"

using namespace qsync;

TEST_CASE("maximally mixed qubit") {
    const SpectralDecomposition s = spectral_decompose(DensityMatrix(Operator(0.5 * Matrix::Identity(2, 2))));
    CHECK(std::abs(s.eigenvalues(0) - 0.5) < 1e-15);
    CHECK(std::abs(s.eigenvalues(1) - 0.5) < 1e-15);
    CHECK(testing::max_abs(s.eigenvectors.adjoint() * s.eigenvectors - Matrix::Identity(2, 2)) < 1e-14);
}

TEST_CASE("pure state") {
    Matrix p = Matrix::Zero(2, 2);
    p(0, 0) = 1.0;
    const SpectralDecomposition s = spectral_decompose(DensityMatrix(Operator(p)));
    CHECK(std::abs(s.eigenvalues(0) - 1.0) < 1e-15);
    CHECK(std::abs(s.eigenvalues(1)) < 1e-15);
    CHECK(std::abs(std::abs(s.eigenvectors(0, 0)) - 1.0) < 1e-15);
}

TEST_CASE("descending order and reconstruction") {
    std::mt19937 rng(17);
    const Matrix rho = testing::random_density(rng, 5);
    const SpectralDecomposition s = spectral_decompose(DensityMatrix(Operator(rho)));
    for (Eigen::Index k = 1; k < 5; ++k) CHECK(s.eigenvalues(k - 1) >= s.eigenvalues(k));
    CHECK(testing::max_abs(s.reconstruct() - rho) < 1e-13);
    const Matrix d = s.to_eigenbasis(rho);
    CHECK(testing::max_abs(d - Matrix(s.eigenvalues.cast<cplx>().asDiagonal())) < 1e-13);
}
