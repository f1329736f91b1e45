// measures.hpp: entropy-based synchronization measure and method-of-moments SNR

#pragma once

#include "qsync/liouvillian.hpp"
#include "qsync/spectral.hpp"
#include "qsync/stationary.hpp"

namespace qsync {

// Natural logarithm; 0 ln 0 = 0.
double von_neumann_entropy(const DensityMatrix& rho);
double shannon_entropy(const RealVector& probabilities);

struct OmegaTildeOptions {
    double eps = 1e-3;
    double scaling_tol = 0.05;  // Ω(ε)/Ω(ε/2) must be 4 within this fraction
    StationaryOptions stationary = {};
};

struct OmegaTildeResult {
    double omega_tilde = 0.0;       // [S(ρ_diag) - S(ρ)] / ε² at ε
    double omega_tilde_half = 0.0;  // same at ε/2
    double scaling_ratio = 4.0;     // Ω(ε) / Ω(ε/2)
};

// ρ_diag keeps the populations of the driven state in the ρ0 eigenbasis.
// Throws EpsTooLarge when the ε² scaling check fails.
OmegaTildeResult omega_tilde_direct_checked(const Liouvillian& L0, const Liouvillian& L1,
                                            const SpectralDecomposition& basis,
                                            OmegaTildeOptions opts = {});

double omega_tilde_direct(const Liouvillian& L0, const Liouvillian& L1, double eps,
                          const SpectralDecomposition& basis);

struct LadderCoefficients {
    RealVector a;  // populations of the diagonal steady state
    Vector b;      // b_m = <m|∂ρ|m+1>
};

// Reads (a, b) from a steady state that is diagonal in the working basis.
LadderCoefficients ladder_coefficients(const DensityMatrix& rho0, const ResponseMatrix& resp);

// Σ_m |b_m|² (ln a_m - ln a_{m+1}) / (a_m - a_{m+1}), limit 1/a_m when equal.
double omega_tilde_perturbative(const LadderCoefficients& coeffs, double eta = 1e-12);

// (Tr[O ∂ρ])² / Var_ρ0(O). Throws DegenerateObservable when Var <= eta.
double method_of_moments_mu(const DensityMatrix& rho0, const ResponseMatrix& resp,
                            const Operator& obs, double eta = 1e-12);

} // namespace qsync
