// models.hpp: quantum van der Pol oscillator, two-qubit oscillator, and
// the closed-form references used to check them

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qsync/liouvillian.hpp"
#include "qsync/operator.hpp"
#include "qsync/stationary.hpp"

namespace qsync {

// Hermitian drive generators with equal Frobenius norms that are pairwise
// trace-orthogonal.
class DriveSet {
public:
    static constexpr double kTol = 1e-12;

    DriveSet() = default;
    DriveSet(std::vector<Operator> generators, std::vector<std::string> labels);

    std::size_t size() const noexcept { return generators_.size(); }
    const std::vector<Operator>& generators() const noexcept { return generators_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::vector<double>& frobenius_norms() const noexcept { return norms_; }

    // Index of a label; throws Validation when absent.
    std::size_t index_of(const std::string& label) const;
    DriveSet subset(const std::vector<std::string>& labels) const;

private:
    std::vector<Operator> generators_;
    std::vector<std::string> labels_;
    std::vector<double> norms_;
};

struct NamedOperator {
    std::string label;
    Operator op;
};

struct ModelSpec {
    std::string name;
    std::size_t hdim = 0;
    Operator H0;
    std::vector<Operator> gain_jumps;
    std::vector<Operator> damping_jumps;
    Operator symmetry_generator;
    DriveSet drives;
    std::map<std::string, double> params;
    std::vector<NamedOperator> observables;
    // Rate used to make reported quantities dimensionless (κ₁ or Γ).
    std::string reference_rate_name;
    double reference_rate = 1.0;

    std::vector<Operator> jumps() const;
    Liouvillian liouvillian() const;
    Liouvillian drive_liouvillian(std::size_t m) const;

    // Re-checks dimensions, hermiticity, drive-set invariants and U(1).
    void validate() const;
};

namespace fock {
Operator annihilation(std::size_t levels);
Operator creation(std::size_t levels);
Operator number(std::size_t levels);
Operator position(std::size_t levels);            // (a + a†)/2
Operator momentum(std::size_t levels);            // (a - a†)/(2i)
Operator two_level_momentum(std::size_t levels);  // momentum restricted to {|0>, |1>}
} // namespace fock

// Two-qubit operators on the basis {↓↓, ↓↑, ↑↓, ↑↑}; qubit 1 is the left factor.
namespace qubits {
enum class Pauli { I, X, Y, Z, Plus, Minus };
Matrix single(Pauli p);
Operator on(std::size_t qubit, Pauli p);  // qubit ∈ {1, 2}
Operator total_sz();                      // (σ₁ᶻ + σ₂ᶻ)/2
} // namespace qubits

ModelSpec vdp_model(double kappa1, double kappa2, std::size_t n_trunc);

std::size_t vdp_truncation_start(double kappa1, double kappa2);

struct TruncationResult {
    std::size_t n_trunc = 0;
    double tail = 0.0;
    int growth_steps = 0;
};

// Grows n by 25% from vdp_truncation_start until the population above level
// n-3 is below tail_tol.
TruncationResult vdp_auto_truncation_detailed(double kappa1, double kappa2, double tail_tol = 1e-8,
                                              std::size_t cap = 200);
std::size_t vdp_auto_truncation(double kappa1, double kappa2, double tail_tol = 1e-8,
                                std::size_t cap = 200);

struct VdpReferenceLimits {
    double F_classical;
    double mu_classical;
    double omega_tilde_classical;
    double F_quantum;
    double mu_quantum;
};

VdpReferenceLimits vdp_reference_limits(double kappa1, double kappa2);

ModelSpec tqo_model(double g, double Gamma, double w1, double gamma1, double w2, double gamma2);

// Reference parameter set: γ₁ = w₂ = Γ, w₁ = γ₂ = 0.
ModelSpec tqo_model_default(double g, double Gamma = 1.0);

// (<σ₁ᶻ>, <σ₂ᶻ>, <σ₁⁺σ₂⁻>, <σ₁ᶻσ₂ᶻ>), valid for w_j + γ_j = Γ.
struct TqoExpectations {
    double x1, x2, x3, x4;
};

TqoExpectations tqo_analytic_steady(double gbar, double d1, double d2);
TqoExpectations tqo_expectations(const DensityMatrix& rho);

// ∂_ε(<σ₁⁺>, <σ₂⁺>, <σ₂ᶻσ₁⁺>, <σ₁ᶻσ₂⁺>) under the drive ε σ₁ˣ, from M y = i c.
using TqoResponse = std::array<cplx, 4>;
TqoResponse tqo_analytic_response(double gbar, double d1, double d2, double Gamma);
TqoResponse tqo_response_expectations(const ResponseMatrix& resp);

double tqo_gstar(double Gamma);

} // namespace qsync
