#include "qsync/spectral.hpp"

#include <algorithm>
#include <numeric>

namespace qsync {

Matrix SpectralDecomposition::reconstruct() const {
    return eigenvectors * eigenvalues.cast<cplx>().asDiagonal() * eigenvectors.adjoint();
}

Matrix SpectralDecomposition::to_eigenbasis(const Matrix& a) const {
    return eigenvectors.adjoint() * a * eigenvectors;
}

SpectralDecomposition spectral_decompose(const DensityMatrix& rho, double zero_cutoff) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
    const auto n = es.eigenvalues().size();
    SpectralDecomposition out;
    out.zero_cutoff = zero_cutoff;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    // Eigen returns ascending order.
    for (Eigen::Index k = 0; k < n; ++k) {
        out.eigenvalues(k) = std::max(0.0, es.eigenvalues()(n - 1 - k));
        out.eigenvectors.col(k) = es.eigenvectors().col(n - 1 - k);
    }
    return out;
}

} // namespace qsync
