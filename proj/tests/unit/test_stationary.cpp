#include <doctest.h>

#include <vector>

#include "helpers.hpp"
#include "qsync/error.hpp"
#include "qsync/models.hpp"
#include "qsync/stationary.hpp"

using namespace qsync;
using qubits::Pauli;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Validation;
}

// Central finite difference of steady states, the brute-force response oracle.
Matrix finite_difference(const Liouvillian& L0, const Liouvillian& L1, double eps) {
    const DensityMatrix plus = steady_state(L0 + eps * L1);
    const DensityMatrix minus = steady_state(L0 + (-eps) * L1);
    return (plus.matrix() - minus.matrix()) / (2.0 * eps);
}

} // namespace

TEST_CASE("pure decay relaxes to the ground state") {
    const std::vector<Operator> jumps = {cplx(std::sqrt(0.4)) * Operator(qubits::single(Pauli::Minus))};
    const DensityMatrix rho = steady_state(build_liouvillian(Operator::zero(2), jumps));
    CHECK(std::abs(rho.matrix()(0, 0) - 1.0) < 1e-14);
    CHECK(testing::max_abs(rho.matrix() - Matrix(rho.matrix().diagonal().asDiagonal())) < 1e-14);
}

TEST_CASE("qubit with gain and decay obeys detailed balance") {
    const double w = 0.3, g = 1.1;
    const std::vector<Operator> jumps = {cplx(std::sqrt(w)) * Operator(qubits::single(Pauli::Plus)),
                                         cplx(std::sqrt(g)) * Operator(qubits::single(Pauli::Minus))};
    const DensityMatrix rho = steady_state(build_liouvillian(Operator::zero(2), jumps));
    CHECK(std::abs(rho.matrix()(0, 0).real() - g / (w + g)) < 1e-14);
    CHECK(std::abs(rho.matrix()(1, 1).real() - w / (w + g)) < 1e-14);
}

TEST_CASE("vdP quantum limit populations") {
    const DensityMatrix rho = steady_state(vdp_model(1.0, 1e6, 3).liouvillian());
    CHECK(std::abs(rho.matrix()(0, 0).real() - 2.0 / 3.0) < 1e-5);
    CHECK(std::abs(rho.matrix()(1, 1).real() - 1.0 / 3.0) < 1e-5);
    CHECK(std::abs(rho.matrix()(2, 2).real()) < 1e-5);
}

TEST_CASE("two-qubit oscillator at g = 0 settles in |down up>") {
    const DensityMatrix rho = steady_state(tqo_model_default(0.0).liouvillian());
    Matrix expected = Matrix::Zero(4, 4);
    expected(1, 1) = 1.0;
    CHECK(testing::max_abs(rho.matrix() - expected) < 1e-12);
}

TEST_CASE("degenerate Liouvillians are rejected") {
    CHECK(kind_of([] { steady_state(Liouvillian::zero(2)); }) == ErrorKind::NonUniqueSteadyState);
    // Dephasing keeps every diagonal state stationary.
    const std::vector<Operator> jumps = {Operator(qubits::single(Pauli::Z))};
    CHECK(kind_of([&] { steady_state(build_liouvillian(Operator::zero(2), jumps)); }) ==
          ErrorKind::NonUniqueSteadyState);
}

TEST_CASE("steady state solver reports its residual") {
    const StationarySolver s(vdp_model(1.0, 1.0, 12).liouvillian());
    CHECK(s.steady_residual() <= 1e-10 * s.spectral_norm());
    CHECK(std::abs(s.steady_state().matrix().trace() - cplx(1.0)) < 1e-12);
    CHECK(s.singular_values().front() >= s.singular_values().back());
}

TEST_CASE("zero perturbation gives a zero response") {
    const ModelSpec m = vdp_model(1.0, 2.0, 8);
    const ResponseMatrix r = perturbed_response(m.liouvillian(), Liouvillian::zero(8), steady_state(m.liouvillian()));
    CHECK(r.op.max_abs() == 0.0);
}

TEST_CASE("vdP quantum-limit coherence response") {
    const ModelSpec m = vdp_model(1.0, 1e6, 3);
    const StationarySolver s(m.liouvillian());
    const ResponseMatrix r = s.response(m.drive_liouvillian(0), "x");
    // Populations (2/3, 1/3); the coherence decays at 3κ₁/2 and is sourced by i[x, ρ0]₁₀ = i/6.
    const cplx expected(0.0, -1.0 / 9.0);
    CHECK(std::abs(r.op(1, 0) - expected) / std::abs(expected) < 1e-3);
    CHECK(std::abs(r.op.trace()) < 1e-14);
    CHECK(r.op.is_hermitian(1e-12));
}

TEST_CASE("response matches the central finite difference") {
    const ModelSpec vdp = vdp_model(1.0, 0.5, 10);
    const ModelSpec tqo = tqo_model(0.7, 1.0, 0.2, 0.8, 0.9, 0.1);
    for (const ModelSpec* m : {&vdp, &tqo}) {
        const StationarySolver s(m->liouvillian());
        for (std::size_t k = 0; k < m->drives.size(); ++k) {
            const Liouvillian L1 = m->drive_liouvillian(k);
            const Matrix fd = finite_difference(m->liouvillian(), L1, 1e-5);
            CHECK(testing::max_abs(s.response(L1).op.matrix() - fd) < 1e-6);
        }
    }
}

TEST_CASE("non trace-preserving perturbations are rejected") {
    const ModelSpec m = vdp_model(1.0, 1.0, 6);
    const StationarySolver s(m.liouvillian());
    const Liouvillian scale(6, Matrix::Identity(36, 36));
    CHECK(kind_of([&] { s.response(scale); }) == ErrorKind::InvalidPerturbation);
}

TEST_CASE("density matrix validation") {
    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 0) = 1.5;
    bad(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix(Operator(bad)), Error);
    Matrix half = Matrix::Identity(2, 2) * 0.4;
    CHECK_THROWS_AS(DensityMatrix(Operator(half)), Error);
    CHECK_NOTHROW(DensityMatrix(Operator(Matrix::Identity(2, 2) * 0.5)));
}
