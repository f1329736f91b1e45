// spectral.hpp: eigendecomposition of density matrices

#pragma once

#include "qsync/operator.hpp"
#include "qsync/stationary.hpp"

namespace qsync {

struct SpectralDecomposition {
    static constexpr double kDefaultZeroCutoff = 1e-12;

    RealVector eigenvalues;  // q_k, descending, >= 0
    Matrix eigenvectors;     // column k is |k>
    double zero_cutoff = kDefaultZeroCutoff;

    std::size_t dim() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }
    Matrix reconstruct() const;

    // U† A U with U the eigenvector matrix.
    Matrix to_eigenbasis(const Matrix& a) const;
};

SpectralDecomposition spectral_decompose(const DensityMatrix& rho,
                                         double zero_cutoff = SpectralDecomposition::kDefaultZeroCutoff);

} // namespace qsync
