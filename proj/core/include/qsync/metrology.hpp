// metrology.hpp: quantum Fisher information of steady-state responses
//
//   F_mn = Σ_{q_k + q_k' > η} 2/(q_k + q_k') Re[<k'|∂_m ρ|k><k|∂_n ρ|k'>]
//
// evaluated in the eigenbasis of the unperturbed steady state. By default
// only the cross-sector (symmetry-breaking) part of each response is scored.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qsync/liouvillian.hpp"
#include "qsync/stationary.hpp"
#include "qsync/symmetry.hpp"

namespace qsync {

struct QfiOptions {
    bool symmetry_breaking_only = true;
};

struct QfiMatrix {
    RealMatrix matrix;
    std::vector<std::string> drive_labels;
    double zero_cutoff = SpectralDecomposition::kDefaultZeroCutoff;

    std::size_t size() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
    QfiMatrix submatrix(std::span<const std::size_t> indices) const;
};

double qfi(const SectorLabeledDecomposition& labeled, const ResponseMatrix& resp,
           QfiOptions opts = {});

QfiMatrix qfim(const SectorLabeledDecomposition& labeled, std::span<const ResponseMatrix> resps,
               QfiOptions opts = {});

// ¼ εᵀ F ε
double bures_distance_sq(const QfiMatrix& F, const RealVector& eps);
// ¼ Σ_j λ_j (Vᵀε)_j²
double bures_distance_sq_eigenbasis(const QfiMatrix& F, const RealVector& eps);

// D_m = 1 / (F_mm [F⁻¹]_mm). Throws SingularMatrix if λ_min <= 1e-12 λ_max.
double orthogonality(const QfiMatrix& F, std::size_t m);

struct EigendriveResult {
    RealVector eigenvalues;   // descending
    RealMatrix eigenvectors;  // columns, same order; first nonzero component > 0
    RealVector n_opt;
    bool top_degenerate = false;
};

EigendriveResult optimal_drive(const QfiMatrix& F);

// (Tr sqrt(sqrt(ρ) σ sqrt(ρ)))², evaluated in extended precision.
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// 8 (1 - sqrt(Fid(ρ(-ε), ρ(+ε)))) / (2ε)², from two full steady-state solves.
double qfi_fidelity_oracle(const Liouvillian& L0, const Liouvillian& L1, double eps = 1e-4,
                           StationaryOptions opts = {});

} // namespace qsync
