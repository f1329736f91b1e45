#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "qsync/analysis.hpp"
#include "qsync/error.hpp"
#include "qsync/models.hpp"

using namespace qsync;
using qubits::Pauli;

TEST_CASE("Fock operators") {
    const Operator a = fock::annihilation(4);
    CHECK(a(0, 1) == cplx(1.0));
    CHECK(std::abs(a(2, 3) - cplx(std::sqrt(3.0))) < 1e-15);
    const Operator n = fock::number(4);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(n(k, k) - cplx(static_cast<double>(k))) < 1e-15);
    CHECK(fock::position(4).is_hermitian());
    CHECK(fock::momentum(4).is_hermitian());
    const Operator s = fock::two_level_momentum(4);
    CHECK(s(0, 1) == fock::momentum(4)(0, 1));
    CHECK(s(1, 2) == cplx(0.0));
}

TEST_CASE("qubit operators follow the {down, up} convention") {
    const Matrix sp = qubits::single(Pauli::Plus);
    CHECK(sp(1, 0) == cplx(1.0));
    const Matrix x = qubits::single(Pauli::X), y = qubits::single(Pauli::Y);
    CHECK(testing::max_abs(sp - 0.5 * (x + cplx(0.0, 1.0) * y)) < 1e-15);
    CHECK(qubits::single(Pauli::Z)(0, 0) == cplx(-1.0));
    // Qubit 1 is the left tensor factor: sigma_1^+ maps |down down> to |up down>.
    CHECK(qubits::on(1, Pauli::Plus)(2, 0) == cplx(1.0));
    CHECK(qubits::on(2, Pauli::Plus)(1, 0) == cplx(1.0));
    CHECK_THROWS_AS(qubits::on(3, Pauli::X), Error);
}

TEST_CASE("drive set validation") {
    const Operator x = fock::position(3);
    CHECK_THROWS_AS(DriveSet({x}, {"a", "b"}), Error);
    CHECK_THROWS_AS(DriveSet({x, x}, {"a", "a"}), Error);
    CHECK_THROWS_AS(DriveSet({x, x}, {"a", "b"}), Error);  // not orthogonal
    CHECK_THROWS_AS(DriveSet({x, cplx(2.0) * fock::momentum(3)}, {"x", "p"}), Error);  // unequal norms
    CHECK_THROWS_AS(DriveSet({fock::annihilation(3)}, {"a"}), Error);
    const DriveSet ok({x, fock::momentum(3)}, {"x", "p"});
    CHECK(ok.index_of("p") == 1);
    CHECK_THROWS_AS(ok.index_of("q"), Error);
    CHECK(ok.subset({"p"}).labels().front() == "p");
}

TEST_CASE("two-qubit model structure") {
    const ModelSpec m = tqo_model_default(0.8);
    CHECK(m.H0.is_hermitian());
    CHECK_NOTHROW(m.validate());
    REQUIRE(m.drives.size() == 8);
    const std::vector<std::string> order = {"sx1", "sx2", "sz2sx1", "sz1sx2", "sy1", "sy2", "sz2sy1", "sz1sy2"};
    CHECK(m.drives.labels() == order);
    for (double n : m.drives.frobenius_norms()) CHECK(n == doctest::Approx(2.0));
    CHECK(m.gain_jumps.size() == 1);
    CHECK(m.damping_jumps.size() == 1);
    CHECK_THROWS_AS(tqo_model(0.1, 1.0, -0.1, 1.0, 1.0, 0.0), Error);
}

TEST_CASE("vdP model validation") {
    CHECK_NOTHROW(vdp_model(1.0, 2.0, 10).validate());
    CHECK_THROWS_AS(vdp_model(0.0, 1.0, 10), Error);
    CHECK_THROWS_AS(vdp_model(1.0, 1.0, 2), Error);
    ModelSpec broken = vdp_model(1.0, 1.0, 5);
    broken.H0 = fock::position(5);
    try {
        broken.validate();
        FAIL("expected a symmetry violation");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SymmetryViolation);
    }
}

TEST_CASE("vdP truncation policy") {
    CHECK(vdp_truncation_start(1e-3, 1.0) == 11);
    CHECK(vdp_truncation_start(20.0, 1.0) == 40);
    CHECK(vdp_truncation_start(1.0, 1e3) == 11);
    CHECK(vdp_auto_truncation(1e-3, 1.0) == 11);
    CHECK(vdp_auto_truncation(3.0, 1.0, 0.5) == vdp_truncation_start(3.0, 1.0));
    const TruncationResult r = vdp_auto_truncation_detailed(3.0, 1.0);
    CHECK(r.tail < 1e-8);
    CHECK(r.n_trunc >= vdp_truncation_start(3.0, 1.0));
    try {
        vdp_auto_truncation(20.0, 1.0, 1e-8, 30);
        FAIL("expected truncation-cap");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TruncationCap);
    }
}

TEST_CASE("vdP truncation convergence") {
    const double F1 = analyze(vdp_model(5.0, 1.0, 25)).qfim.matrix(0, 0);
    const double F2 = analyze(vdp_model(5.0, 1.0, 50)).qfim.matrix(0, 0);
    CHECK(std::abs(F2 / F1 - 1.0) < 1e-3);
}

TEST_CASE("vdP mean occupation in the classical regime") {
    const std::size_t n = 40;
    const DensityMatrix rho = steady_state(vdp_model(20.0, 1.0, n).liouvillian());
    const double mean = (fock::number(n).matrix() * rho.matrix()).trace().real();
    CHECK(std::abs(mean / 10.0 - 1.0) < 0.2);
}

TEST_CASE("vdP reference limits") {
    const VdpReferenceLimits r = vdp_reference_limits(1.0, 1.0);
    CHECK(r.F_classical == doctest::Approx(4.0 / 9.0));
    CHECK(r.mu_classical == doctest::Approx(4.0 / 9.0));
    CHECK(r.omega_tilde_classical == doctest::Approx(2.0 / 9.0));
    CHECK(r.F_quantum == doctest::Approx(4.0 / 81.0));
    CHECK(vdp_reference_limits(2.0, 1.0).mu_quantum == doctest::Approx(1.0 / 135.0));
}

TEST_CASE("two-qubit analytic steady state") {
    const TqoExpectations a = tqo_analytic_steady(0.0, -1.0, 1.0);
    CHECK(a.x1 == -1.0);
    CHECK(a.x2 == 1.0);
    CHECK(a.x3 == 0.0);
    CHECK(a.x4 == -1.0);
    const TqoExpectations b = tqo_analytic_steady(std::sqrt(3.0) / 2.0, -1.0, 1.0);
    CHECK(b.x1 == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(b.x2 == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(b.x3 == doctest::Approx(-std::sqrt(3.0) / 8.0).epsilon(1e-14));
    CHECK(b.x4 == doctest::Approx(-0.25).epsilon(1e-14));
    const TqoExpectations c = tqo_analytic_steady(1e6, -0.6, 0.6);
    CHECK(std::max({std::abs(c.x1), std::abs(c.x2), std::abs(c.x3), std::abs(c.x4)}) < 1e-6);
}

TEST_CASE("two-qubit numeric steady state matches the closed form") {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> gd(0.0, 3.0), dd(-1.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        const double G = 1.3, gbar = gd(rng), d1 = dd(rng), d2 = dd(rng);
        const ModelSpec m = tqo_model(gbar * G, G, G * (1 + d1) / 2, G * (1 - d1) / 2, G * (1 + d2) / 2, G * (1 - d2) / 2);
        const TqoExpectations x = tqo_expectations(steady_state(m.liouvillian()));
        const TqoExpectations xa = tqo_analytic_steady(gbar, d1, d2);
        CHECK(std::abs(x.x1 - xa.x1) < 1e-10);
        CHECK(std::abs(x.x2 - xa.x2) < 1e-10);
        CHECK(std::abs(x.x3 - xa.x3) < 1e-10);
        CHECK(std::abs(x.x4 - xa.x4) < 1e-10);
    }
}

TEST_CASE("two-qubit analytic response") {
    const TqoResponse r0 = tqo_analytic_response(0.0, -1.0, 1.0, 1.0);
    CHECK(std::abs(r0[1]) < 1e-15);
    CHECK(std::abs(r0[3]) < 1e-15);
    const TqoResponse rs = tqo_analytic_response(std::sqrt(3.0) / 2.0, -1.0, 1.0, 1.0);
    CHECK(std::abs(rs[1] - rs[3]) < 1e-14);
    CHECK(std::abs(rs[0] - rs[2]) < 1e-14);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> gd(0.0, 3.0), dd(-1.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        const TqoResponse y = tqo_analytic_response(gd(rng), dd(rng), dd(rng), 1.0);
        for (const cplx& v : y) CHECK(v.real() == 0.0);
    }
    // Numeric cross-check against the full response solve.
    const double G = 0.7, gbar = 0.45, d1 = -0.3, d2 = 0.8;
    const ModelSpec m = tqo_model(gbar * G, G, G * (1 + d1) / 2, G * (1 - d1) / 2, G * (1 + d2) / 2, G * (1 - d2) / 2);
    const StationarySolver s(m.liouvillian());
    const TqoResponse y = tqo_response_expectations(s.response(m.drive_liouvillian(0)));
    const TqoResponse ya = tqo_analytic_response(gbar, d1, d2, G);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(y[k] - ya[k]) < 1e-8);
}

TEST_CASE("coupling at which orthogonality revives") {
    CHECK(tqo_gstar(1.0) == doctest::Approx(0.8660254037844386));
    CHECK(tqo_gstar(2.0) == doctest::Approx(std::sqrt(3.0)));
}
