#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "qsync/analysis.hpp"
#include "qsync/error.hpp"
#include "qsync/metrology.hpp"

using namespace qsync;

namespace {

QfiMatrix make_qfim(const RealMatrix& m) {
    QfiMatrix F;
    F.matrix = m;
    for (Eigen::Index k = 0; k < m.rows(); ++k) F.drive_labels.push_back("d" + std::to_string(k));
    return F;
}

SectorLabeledDecomposition pure_ground(std::size_t d) {
    Matrix p = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    p(0, 0) = 1.0;
    return label_sectors(spectral_decompose(DensityMatrix(Operator(p))), assign_charges(fock::number(d), d));
}

} // namespace

TEST_CASE("QFI of a pure state") {
    const auto labeled = pure_ground(2);
    CHECK(qfi(labeled, ResponseMatrix{Operator::zero(2), "zero", Basis::Working}) == 0.0);
    const double c = 0.37;
    Matrix r = Matrix::Zero(2, 2);
    r(0, 1) = c;
    r(1, 0) = c;
    CHECK(qfi(labeled, ResponseMatrix{Operator(r), "x", Basis::Working}) == doctest::Approx(4.0 * c * c).epsilon(1e-14));
}

TEST_CASE("vdP quantum limit QFI") {
    const Analysis a = analyze(vdp_model(1.0, 1e6, 3));
    CHECK(std::abs(a.qfim.matrix(0, 0) / (4.0 / 81.0) - 1.0) < 1e-2);
}

TEST_CASE("QFIM reductions") {
    const Analysis a = analyze(tqo_model_default(0.6), {"sx1", "sx2", "sz2sx1"});
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(std::abs(a.qfim.matrix(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) -
                       qfi(a.labeled, a.responses[k])) <= 1e-12 * a.qfim.matrix(0, 0));
    }
    const std::vector<ResponseMatrix> twice = {a.responses[0], a.responses[0]};
    const QfiMatrix F = qfim(a.labeled, twice);
    const double f = F.matrix(0, 0);
    CHECK(std::abs(F.matrix(0, 1) - f) < 1e-12 * f);
    CHECK(std::abs(F.matrix(1, 1) - f) < 1e-12 * f);
}

TEST_CASE("two-qubit QFIM at g = 0 decouples the qubits") {
    const Analysis a = analyze(tqo_model_default(0.0), {"sx1", "sx2", "sz2sx1", "sz1sx2"});
    // Drives on qubit 1: sx1, sz2sx1. Drives on qubit 2: sx2, sz1sx2.
    for (auto [i, j] : {std::pair{0, 1}, {0, 3}, {2, 1}, {2, 3}}) CHECK(std::abs(a.qfim.matrix(i, j)) < 1e-10);
}

TEST_CASE("QFIM is invariant under rotations inside degenerate blocks") {
    // Fully mixed, partially degenerate and pure (rank one) steady states.
    const ModelSpec models[] = {tqo_model(0.0, 1.0, 0.5, 0.5, 0.5, 0.5), tqo_model(0.0, 1.0, 0.3, 0.7, 0.3, 0.7),
                                tqo_model_default(0.0)};
    std::mt19937 rng(29);
    for (const ModelSpec& m : models) {
        const Analysis a = analyze(m);
        SpectralDecomposition rotated = a.decomp;
        const auto& q = rotated.eigenvalues;
        Eigen::Index start = 0;
        for (Eigen::Index k = 1; k <= q.size(); ++k) {
            if (k < q.size() && std::abs(q(k) - q(start)) <= 1e-10) continue;
            const Eigen::Index len = k - start;
            if (len > 1) {
                Eigen::HouseholderQR<Matrix> qr(testing::random_matrix(rng, len));
                const Matrix u = qr.householderQ();
                rotated.eigenvectors.middleCols(start, len) = (rotated.eigenvectors.middleCols(start, len) * u).eval();
            }
            start = k;
        }
        const auto relabeled = label_sectors(rotated, a.charges);
        const QfiMatrix F = qfim(relabeled, a.responses);
        CHECK((F.matrix - a.qfim.matrix).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("Bures distance") {
    const QfiMatrix F = make_qfim((RealMatrix(2, 2) << 4.0, 0.0, 0.0, 8.0).finished());
    CHECK(bures_distance_sq(F, RealVector::Zero(2)) == 0.0);
    CHECK(bures_distance_sq(F, (RealVector(2) << 1.0, 0.0).finished()) == doctest::Approx(1.0));
    std::mt19937 rng(41);
    std::normal_distribution<double> n;
    for (int t = 0; t < 10; ++t) {
        RealMatrix a(4, 4);
        for (Eigen::Index i = 0; i < 16; ++i) a(i) = n(rng);
        const QfiMatrix G = make_qfim(a * a.transpose());
        RealVector e(4);
        for (Eigen::Index i = 0; i < 4; ++i) e(i) = n(rng);
        const double x = bures_distance_sq(G, e);
        CHECK(std::abs(x - bures_distance_sq_eigenbasis(G, e)) <= 1e-12 * std::max(1.0, x));
    }
    CHECK_THROWS_AS(bures_distance_sq(F, RealVector::Zero(3)), Error);
}

TEST_CASE("orthogonality measure") {
    CHECK(orthogonality(make_qfim(RealVector(3).setConstant(2.0).asDiagonal().toDenseMatrix()), 1) ==
          doctest::Approx(1.0));
    const double a = 3.0, c = 1.2;
    const QfiMatrix F = make_qfim((RealMatrix(2, 2) << a, c, c, a).finished());
    CHECK(orthogonality(F, 0) == doctest::Approx(1.0 - (c / a) * (c / a)).epsilon(1e-14));
    CHECK(orthogonality(F, 1) == doctest::Approx(1.0 - (c / a) * (c / a)).epsilon(1e-14));
    const QfiMatrix singular = make_qfim((RealMatrix(2, 2) << 1.0, 1.0, 1.0, 1.0).finished());
    try {
        orthogonality(singular, 0);
        FAIL("expected a singular-matrix error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SingularMatrix);
    }
}

TEST_CASE("orthogonality revives at g*") {
    const Analysis a = analyze(tqo_model_default(tqo_gstar(1.0)), {"sx1", "sx2"});
    CHECK(std::abs(orthogonality(a.qfim, 0) - 1.0) < 1e-6);
}

TEST_CASE("optimal drive") {
    const EigendriveResult e = optimal_drive(make_qfim((RealMatrix(2, 2) << 1.0, 0.0, 0.0, 2.0).finished()));
    CHECK(e.eigenvalues(0) == doctest::Approx(2.0));
    CHECK(std::abs(e.n_opt(0)) < 1e-15);
    CHECK(e.n_opt(1) == doctest::Approx(1.0));

    const Analysis a = analyze(tqo_model_default(0.4), {"sx1", "sx2"});
    const EigendriveResult t = optimal_drive(a.qfim);
    const double s = a.qfim.matrix(0, 1) > 0 ? 1.0 : -1.0;
    CHECK(std::abs(t.n_opt(0) - 1.0 / std::sqrt(2.0)) < 1e-8);
    CHECK(std::abs(t.n_opt(1) - s / std::sqrt(2.0)) < 1e-8);

    std::mt19937 rng(7);
    std::normal_distribution<double> n;
    const Analysis b = analyze(tqo_model_default(0.9), {"sx1", "sx2", "sz2sx1", "sz1sx2"});
    const EigendriveResult top = optimal_drive(b.qfim);
    double worst = -1e300;
    for (int k = 0; k < 10000; ++k) {
        RealVector v(4);
        for (Eigen::Index i = 0; i < 4; ++i) v(i) = n(rng);
        v.normalize();
        worst = std::max(worst, v.dot(b.qfim.matrix * v));
    }
    CHECK(worst <= top.eigenvalues(0) + 1e-10);
}

TEST_CASE("Uhlmann fidelity") {
    std::mt19937 rng(13);
    const DensityMatrix rho(Operator(testing::random_density(rng, 3)));
    CHECK(uhlmann_fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-14));
    Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    CHECK(uhlmann_fidelity(DensityMatrix(Operator(p0)), DensityMatrix(Operator(p1))) < 1e-15);
    Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
    a.diagonal() << 0.3, 0.7;
    b.diagonal() << 0.6, 0.4;
    const double expected = std::pow(std::sqrt(0.3 * 0.6) + std::sqrt(0.7 * 0.4), 2);
    CHECK(uhlmann_fidelity(DensityMatrix(Operator(a)), DensityMatrix(Operator(b))) ==
          doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("fidelity oracle agrees with the QFI") {
    const ModelSpec vdp = vdp_model(1.0, 1.0, 15);
    CHECK(qfi_fidelity_oracle(vdp.liouvillian(), Liouvillian::zero(15)) == 0.0);
    const Analysis a = analyze(vdp);
    const double F = a.qfim.matrix(0, 0);
    CHECK(std::abs(qfi_fidelity_oracle(a.L0, a.drive_liouvillians[0], 1e-4) - F) / F < 1e-3);

    const Analysis t = analyze(tqo_model_default(1.0), {"sx1"});
    const double Ft = t.qfim.matrix(0, 0);
    CHECK(std::abs(qfi_fidelity_oracle(t.L0, t.drive_liouvillians[0], 1e-4) - Ft) / Ft < 1e-3);
}
