#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "qsync/analysis.hpp"
#include "qsync/error.hpp"
#include "qsync/measures.hpp"

using namespace qsync;

TEST_CASE("entropies") {
    Matrix pure = Matrix::Zero(2, 2);
    pure(0, 0) = 1.0;
    CHECK(std::abs(von_neumann_entropy(DensityMatrix(Operator(pure)))) < 1e-15);
    CHECK(von_neumann_entropy(DensityMatrix(Operator(0.5 * Matrix::Identity(2, 2)))) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));
    Matrix d = Matrix::Zero(2, 2);
    d.diagonal() << 2.0 / 3.0, 1.0 / 3.0;
    const double expected = std::log(3.0) - (2.0 / 3.0) * std::log(2.0);
    CHECK(von_neumann_entropy(DensityMatrix(Operator(d))) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(shannon_entropy((RealVector(3) << 0.5, 0.5, 0.0).finished()) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("perturbative Omega from ladder coefficients") {
    LadderCoefficients zero{(RealVector(3) << 0.5, 0.3, 0.2).finished(), Vector::Zero(2)};
    CHECK(omega_tilde_perturbative(zero) == 0.0);
    const cplx beta(0.0, 0.21);
    LadderCoefficients two{(RealVector(2) << 2.0 / 3.0, 1.0 / 3.0).finished(), (Vector(1) << beta).finished()};
    CHECK(omega_tilde_perturbative(two) == doctest::Approx(3.0 * std::log(2.0) * std::norm(beta)).epsilon(1e-13));
    LadderCoefficients bad{RealVector::Zero(3), Vector::Zero(3)};
    CHECK_THROWS_AS(omega_tilde_perturbative(bad), Error);
}

TEST_CASE("vdP quantum-limit Omega") {
    const Analysis a = analyze(vdp_model(1.0, 1e6, 3));
    const double om = omega_tilde_perturbative(ladder_coefficients(a.rho0(), a.responses[0]));
    CHECK(std::abs(om / (std::log(2.0) / 27.0) - 1.0) < 1e-3);
}

TEST_CASE("direct and perturbative Omega agree") {
    const double ratio = 5.0;
    const ModelSpec m = vdp_model(ratio, 1.0, vdp_auto_truncation(ratio, 1.0));
    const Analysis a = analyze(m);
    const double pert = omega_tilde_perturbative(ladder_coefficients(a.rho0(), a.responses[0]));
    const OmegaTildeResult direct = omega_tilde_direct_checked(a.L0, a.drive_liouvillians[0], a.decomp);
    CHECK(std::abs(direct.omega_tilde / pert - 1.0) < 2e-2);
    CHECK(std::abs(direct.scaling_ratio - 4.0) < 0.2);
    CHECK(omega_tilde_direct(a.L0, Liouvillian::zero(m.hdim), 1e-3, a.decomp) == 0.0);
}

TEST_CASE("Omega flags eps outside the quadratic regime") {
    const ModelSpec m = vdp_model(1.0, 1.0, 12);
    const Analysis a = analyze(m);
    OmegaTildeOptions o;
    o.eps = 3.0;
    try {
        omega_tilde_direct_checked(a.L0, a.drive_liouvillians[0], a.decomp, o);
        FAIL("expected eps-too-large");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EpsTooLarge);
    }
}

TEST_CASE("method of moments in the quantum limit") {
    const ModelSpec m = vdp_model(1.0, 1e6, 3);
    const Analysis a = analyze(m);
    const double mu = method_of_moments_mu(a.rho0(), a.responses[0], fock::momentum(3));
    CHECK(std::abs(mu / (4.0 / 135.0) - 1.0) < 1e-2);
    const double mu_trunc = method_of_moments_mu(a.rho0(), a.responses[0], fock::two_level_momentum(3));
    CHECK(std::abs(mu_trunc / a.qfim.matrix(0, 0) - 1.0) < 1e-2);
    CHECK(method_of_moments_mu(a.rho0(), ResponseMatrix{Operator::zero(3), "", Basis::Working},
                               fock::momentum(3)) == 0.0);
}

TEST_CASE("method of moments rejects zero-variance observables") {
    const Analysis a = analyze(vdp_model(1.0, 1.0, 8));
    try {
        method_of_moments_mu(a.rho0(), a.responses[0], Operator::identity(8));
        FAIL("expected degenerate-observable");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateObservable);
    }
}

TEST_CASE("Cramer-Rao ordering for random observables") {
    std::mt19937 rng(23);
    const Analysis a = analyze(tqo_model(0.8, 1.0, 0.1, 0.9, 0.8, 0.2));
    for (std::size_t k = 0; k < a.responses.size(); ++k) {
        const double F = qfi(a.labeled, a.responses[k], QfiOptions{false});
        for (int t = 0; t < 10; ++t) {
            const double mu = method_of_moments_mu(a.rho0(), a.responses[k], Operator(testing::random_hermitian(rng, 4)));
            CHECK(mu <= F * (1.0 + 1e-9));
        }
    }
}
