#include "qsync/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qsync/error.hpp"

namespace qsync {

double shannon_entropy(const RealVector& probabilities) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < probabilities.size(); ++k) {
        const double p = probabilities(k);
        if (p > 0.0) s -= p * std::log(p);
    }
    return s;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
    return std::max(0.0, shannon_entropy(es.eigenvalues()));
}

namespace {

// S(ρ_diag) - S(ρ) for the steady state at drive amplitude eps.
double entropy_gap(const Liouvillian& L0, const Liouvillian& L1, double eps,
                   const SpectralDecomposition& basis, const StationaryOptions& opts) {
    const DensityMatrix rho = steady_state(L0 + eps * L1, opts);
    const RealVector populations = basis.to_eigenbasis(rho.matrix()).diagonal().real();
    return shannon_entropy(populations) - von_neumann_entropy(rho);
}

} // namespace

OmegaTildeResult omega_tilde_direct_checked(const Liouvillian& L0, const Liouvillian& L1,
                                            const SpectralDecomposition& basis, OmegaTildeOptions opts) {
    if (L0.hdim() != L1.hdim() || basis.dim() != L0.hdim()) {
        throw Error(ErrorKind::Dimension, "omega_tilde_direct: dimension mismatch");
    }
    if (!(opts.eps > 0.0)) throw Error(ErrorKind::Validation, "omega_tilde_direct: eps must be positive");
    OmegaTildeResult out;
    if (L1.matrix().isZero(0.0)) return out;

    const double e = opts.eps;
    const double full = entropy_gap(L0, L1, e, basis, opts.stationary);
    const double half = entropy_gap(L0, L1, 0.5 * e, basis, opts.stationary);
    out.omega_tilde = full / (e * e);
    out.omega_tilde_half = half / (0.25 * e * e);
    if (out.omega_tilde < -1e-10) {
        std::ostringstream msg;
        msg << "negative entropy gap " << out.omega_tilde;
        throw Error(ErrorKind::NumericalFailure, msg.str());
    }
    if (half > 0.0) {
        out.scaling_ratio = full / half;
        if (std::abs(out.scaling_ratio / 4.0 - 1.0) > opts.scaling_tol) {
            std::ostringstream msg;
            msg << "Omega(eps)/Omega(eps/2) = " << out.scaling_ratio << " at eps = " << e;
            throw Error(ErrorKind::EpsTooLarge, msg.str());
        }
    }
    return out;
}

double omega_tilde_direct(const Liouvillian& L0, const Liouvillian& L1, double eps,
                          const SpectralDecomposition& basis) {
    OmegaTildeOptions opts;
    opts.eps = eps;
    return omega_tilde_direct_checked(L0, L1, basis, opts).omega_tilde;
}

LadderCoefficients ladder_coefficients(const DensityMatrix& rho0, const ResponseMatrix& resp) {
    if (resp.basis != Basis::Working) {
        throw Error(ErrorKind::Validation, "ladder_coefficients expects a working-basis response");
    }
    const Matrix& r0 = rho0.matrix();
    const auto d = r0.rows();
    if (resp.op.dim() != rho0.dim()) throw Error(ErrorKind::Dimension, "ladder_coefficients: dimension mismatch");
    const Matrix off = r0 - Matrix(r0.diagonal().asDiagonal());
    if (off.cwiseAbs().maxCoeff() > 1e-10) {
        throw Error(ErrorKind::Validation, "steady state is not diagonal in the working basis");
    }
    LadderCoefficients out;
    out.a = r0.diagonal().real().cwiseMax(0.0);
    out.b.resize(std::max<Eigen::Index>(d - 1, 0));
    for (Eigen::Index m = 0; m + 1 < d; ++m) out.b(m) = resp.op.matrix()(m, m + 1);
    return out;
}

double omega_tilde_perturbative(const LadderCoefficients& coeffs, double eta) {
    if (coeffs.b.size() + 1 != coeffs.a.size()) {
        throw Error(ErrorKind::Dimension, "ladder coefficients: len(b) must be len(a) - 1");
    }
    double total = 0.0;
    for (Eigen::Index m = 0; m < coeffs.b.size(); ++m) {
        const double b2 = std::norm(coeffs.b(m));
        if (b2 == 0.0) continue;
        const double am = coeffs.a(m);
        const double an = coeffs.a(m + 1);
        if (am < eta && an < eta) continue;
        // A single vanishing population is floored at eta.
        const double x = std::max(am, eta);
        const double y = std::max(an, eta);
        if (std::abs(x - y) <= 1e-12) {
            total += b2 / x;
        } else {
            total += b2 * std::log1p((x - y) / y) / (x - y);
        }
    }
    return total;
}

double method_of_moments_mu(const DensityMatrix& rho0, const ResponseMatrix& resp, const Operator& obs,
                            double eta) {
    if (!obs.is_hermitian(1e-10)) throw Error(ErrorKind::Validation, "observable is not Hermitian");
    if (obs.dim() != rho0.dim() || resp.op.dim() != rho0.dim()) {
        throw Error(ErrorKind::Dimension, "method_of_moments_mu: dimension mismatch");
    }
    if (resp.basis != Basis::Working) {
        throw Error(ErrorKind::Validation, "method_of_moments_mu expects a working-basis response");
    }
    const Matrix& o = obs.matrix();
    const Matrix& r = rho0.matrix();
    const double mean = (o * r).trace().real();
    const double var = (o * o * r).trace().real() - mean * mean;
    if (var <= eta) {
        std::ostringstream msg;
        msg << "observable variance " << var << " is not positive";
        throw Error(ErrorKind::DegenerateObservable, msg.str());
    }
    const double signal = (o * resp.op.matrix()).trace().real();
    return signal * signal / var;
}

} // namespace qsync
