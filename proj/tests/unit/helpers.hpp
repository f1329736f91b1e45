#pragma once

#include <random>

#include "qsync/operator.hpp"

namespace testing {

inline qsync::Matrix random_matrix(std::mt19937& rng, Eigen::Index d) {
    std::normal_distribution<double> n(0.0, 1.0);
    qsync::Matrix m(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) m(i, j) = {n(rng), n(rng)};
    }
    return m;
}

inline qsync::Matrix random_hermitian(std::mt19937& rng, Eigen::Index d) {
    const qsync::Matrix m = random_matrix(rng, d);
    return 0.5 * (m + m.adjoint());
}

inline qsync::Matrix random_density(std::mt19937& rng, Eigen::Index d) {
    const qsync::Matrix m = random_matrix(rng, d);
    qsync::Matrix r = m * m.adjoint();
    return r / r.trace().real();
}

inline double max_abs(const qsync::Matrix& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace testing
