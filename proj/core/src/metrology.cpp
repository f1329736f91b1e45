#include "qsync/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qsync/error.hpp"

namespace qsync {

QfiMatrix QfiMatrix::submatrix(std::span<const std::size_t> indices) const {
    QfiMatrix out;
    out.zero_cutoff = zero_cutoff;
    const auto k = static_cast<Eigen::Index>(indices.size());
    out.matrix.resize(k, k);
    for (Eigen::Index a = 0; a < k; ++a) {
        const auto ia = static_cast<Eigen::Index>(indices[static_cast<std::size_t>(a)]);
        if (ia >= matrix.rows()) throw Error(ErrorKind::Dimension, "QFIM submatrix index out of range");
        out.drive_labels.push_back(drive_labels[static_cast<std::size_t>(ia)]);
        for (Eigen::Index b = 0; b < k; ++b) {
            out.matrix(a, b) = matrix(ia, static_cast<Eigen::Index>(indices[static_cast<std::size_t>(b)]));
        }
    }
    return out;
}

namespace {

Matrix scored_part(const ResponseMatrix& resp, const SectorLabeledDecomposition& labeled, QfiOptions opts) {
    ResponseMatrix eig = to_eigenbasis(resp, labeled);
    if (opts.symmetry_breaking_only) eig = split_response(eig, labeled).breaking;
    return eig.op.matrix();
}

// w(k, k') = 2/(q_k + q_k') on the support q_k + q_k' > η, zero elsewhere.
RealMatrix qfi_weights(const SpectralDecomposition& decomp) {
    const auto d = static_cast<Eigen::Index>(decomp.dim());
    RealMatrix w(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
            const double s = decomp.eigenvalues(i) + decomp.eigenvalues(j);
            w(i, j) = s > decomp.zero_cutoff ? 2.0 / s : 0.0;
        }
    }
    return w;
}

} // namespace

QfiMatrix qfim(const SectorLabeledDecomposition& labeled, std::span<const ResponseMatrix> resps,
               QfiOptions opts) {
    const auto m = static_cast<Eigen::Index>(resps.size());
    std::vector<Matrix> parts;
    parts.reserve(resps.size());
    QfiMatrix out;
    out.zero_cutoff = labeled.decomp.zero_cutoff;
    for (const auto& r : resps) {
        if (r.op.dim() != labeled.decomp.dim()) throw Error(ErrorKind::Dimension, "qfim: dimension mismatch");
        parts.push_back(scored_part(r, labeled, opts));
        out.drive_labels.push_back(r.drive_label);
    }
    const RealMatrix w = qfi_weights(labeled.decomp);
    out.matrix.resize(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
        for (Eigen::Index b = a; b < m; ++b) {
            // Σ w(k,k') Re[<k'|A|k><k|B|k'>] with <k'|A|k> = A(k', k).
            const Matrix& A = parts[static_cast<std::size_t>(a)];
            const Matrix& B = parts[static_cast<std::size_t>(b)];
            const double v = (w.array() * (A.array() * B.transpose().array()).real()).sum();
            out.matrix(a, b) = v;
            out.matrix(b, a) = v;
        }
    }
    return out;
}

double qfi(const SectorLabeledDecomposition& labeled, const ResponseMatrix& resp, QfiOptions opts) {
    return qfim(labeled, std::span<const ResponseMatrix>(&resp, 1), opts).matrix(0, 0);
}

double bures_distance_sq(const QfiMatrix& F, const RealVector& eps) {
    if (static_cast<std::size_t>(eps.size()) != F.size()) {
        throw Error(ErrorKind::Dimension, "bures_distance_sq: eps length does not match QFIM size");
    }
    return 0.25 * eps.dot(F.matrix * eps);
}

double bures_distance_sq_eigenbasis(const QfiMatrix& F, const RealVector& eps) {
    if (static_cast<std::size_t>(eps.size()) != F.size()) {
        throw Error(ErrorKind::Dimension, "bures_distance_sq: eps length does not match QFIM size");
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(F.matrix);
    const RealVector rotated = es.eigenvectors().transpose() * eps;
    return 0.25 * (es.eigenvalues().array() * rotated.array().square()).sum();
}

double orthogonality(const QfiMatrix& F, std::size_t m) {
    if (m >= F.size()) throw Error(ErrorKind::Dimension, "orthogonality: drive index out of range");
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(F.matrix);
    const RealVector& lam = es.eigenvalues();
    const double lmax = lam.maxCoeff();
    const double lmin = lam.minCoeff();
    if (!(lmax > 0.0) || lmin <= 1e-12 * lmax) {
        std::ostringstream msg;
        msg << "QFIM is singular (lambda_min=" << lmin << ", lambda_max=" << lmax << ")";
        throw Error(ErrorKind::SingularMatrix, msg.str());
    }
    const auto i = static_cast<Eigen::Index>(m);
    const RealVector row = es.eigenvectors().row(i).transpose();
    const double inv_mm = (row.array().square() / lam.array()).sum();
    const double D = 1.0 / (F.matrix(i, i) * inv_mm);
    if (D < 0.0 || D > 1.0 + 1e-10) {
        std::ostringstream msg;
        msg << "orthogonality measure " << D << " outside [0, 1]";
        throw Error(ErrorKind::NumericalFailure, msg.str());
    }
    return D;
}

EigendriveResult optimal_drive(const QfiMatrix& F) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(F.matrix);
    const auto n = es.eigenvalues().size();
    EigendriveResult out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.eigenvalues(k) = es.eigenvalues()(n - 1 - k);
        RealVector v = es.eigenvectors().col(n - 1 - k);
        const double scale = v.cwiseAbs().maxCoeff();
        for (Eigen::Index i = 0; i < n; ++i) {
            if (std::abs(v(i)) > 1e-10 * scale) {
                if (v(i) < 0.0) v = -v;
                break;
            }
        }
        out.eigenvectors.col(k) = v;
    }
    if (n > 0) out.n_opt = out.eigenvectors.col(0);
    if (n > 1) {
        const double top = std::abs(out.eigenvalues(0));
        out.top_degenerate = out.eigenvalues(0) - out.eigenvalues(1) <= 1e-9 * std::max(top, 1e-300);
    }
    return out;
}

namespace {

using LCplx = std::complex<long double>;
using LMatrix = Eigen::Matrix<LCplx, Eigen::Dynamic, Eigen::Dynamic>;
using LRealVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

LMatrix psd_sqrt(const LMatrix& a) {
    Eigen::SelfAdjointEigenSolver<LMatrix> es(a);
    LRealVector r = es.eigenvalues().cwiseMax(0.0L).cwiseSqrt();
    return es.eigenvectors() * r.cast<LCplx>().asDiagonal() * es.eigenvectors().adjoint();
}

long double sqrt_fidelity_ld(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw Error(ErrorKind::Dimension, "fidelity: dimension mismatch");
    // Renormalize in extended precision: a trace error of one ulp would
    // otherwise dominate 1 - sqrt(F) for nearby states.
    LMatrix r = rho.matrix().cast<LCplx>();
    LMatrix s = sigma.matrix().cast<LCplx>();
    r /= r.trace().real();
    s /= s.trace().real();
    const LMatrix sr = psd_sqrt(r);
    LMatrix inner = sr * s * sr;
    inner = (0.5L * (inner + inner.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<LMatrix> es(inner, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseMax(0.0L).cwiseSqrt().sum();
}

} // namespace

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    const long double root = sqrt_fidelity_ld(rho, sigma);
    return static_cast<double>(root * root);
}

double qfi_fidelity_oracle(const Liouvillian& L0, const Liouvillian& L1, double eps,
                           StationaryOptions opts) {
    if (L0.hdim() != L1.hdim()) throw Error(ErrorKind::Dimension, "oracle: dimension mismatch");
    if (!(eps > 0.0)) throw Error(ErrorKind::Validation, "oracle: eps must be positive");
    if (L1.matrix().isZero(0.0)) return 0.0;
    const DensityMatrix minus = steady_state(L0 + (-eps) * L1, opts);
    const DensityMatrix plus = steady_state(L0 + eps * L1, opts);
    const long double root = sqrt_fidelity_ld(minus, plus);
    const long double step = 2.0L * static_cast<long double>(eps);
    return static_cast<double>(8.0L * (1.0L - root) / (step * step));
}

} // namespace qsync
