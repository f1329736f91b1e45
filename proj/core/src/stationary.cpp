#include "qsync/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lapack.hpp"
#include "qsync/error.hpp"

namespace qsync {

DensityMatrix::DensityMatrix(Operator op, double trace_tol) : op_(std::move(op)), trace_tol_(trace_tol) {
    if (!op_.is_hermitian(1e-12)) {
        throw Error(ErrorKind::Validation, "density matrix is not Hermitian");
    }
    const cplx tr = op_.trace();
    if (std::abs(tr - 1.0) > trace_tol_) {
        std::ostringstream msg;
        msg << "density matrix trace " << tr.real() << " differs from 1";
        throw Error(ErrorKind::Validation, msg.str());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(op_.matrix(), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kClipWindow) {
        throw Error(ErrorKind::Validation, "density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::from_raw(const Matrix& raw) {
    Matrix h = hermitize(raw);
    const double tr = h.trace().real();
    if (!(tr > 0.0) || !std::isfinite(tr)) {
        throw Error(ErrorKind::NumericalFailure, "steady-state candidate has non-positive trace");
    }
    h /= tr;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    RealVector q = es.eigenvalues();
    const double qmin = q.minCoeff();
    if (qmin < -kClipWindow) {
        std::ostringstream msg;
        msg << "eigenvalue " << qmin << " below clipping window";
        throw Error(ErrorKind::NumericalFailure, msg.str());
    }
    if (qmin < 0.0) {
        q = q.cwiseMax(0.0);
        q /= q.sum();
        const Matrix& v = es.eigenvectors();
        h = v * q.cast<cplx>().asDiagonal() * v.adjoint();
        h = hermitize(h);
    }
    return DensityMatrix(Operator(std::move(h)));
}

struct StationarySolver::Impl {
    Liouvillian L;
    StationaryOptions opts;
    std::vector<double> sv;
    Matrix constrained;  // L with row 0 replaced by the trace functional
    Matrix factors;
    std::vector<int> pivots;
    DensityMatrix rho0;
    double residual = 0.0;

    // Solves L x = b, Tr x = t via the constrained system plus one refinement step.
    Vector solve(Vector rhs, cplx t) const {
        rhs(0) = t;
        Vector x = detail::lu_solve(factors, pivots, rhs);
        const Vector r = rhs - constrained * x;
        x += detail::lu_solve(factors, pivots, r);
        return x;
    }
};

StationarySolver::StationarySolver(const Liouvillian& L, StationaryOptions opts)
    : impl_(std::make_unique<Impl>()) {
    auto& s = *impl_;
    s.L = L;
    s.opts = opts;
    const auto d = static_cast<Eigen::Index>(L.hdim());
    const auto n = d * d;
    if (n < 1) throw Error(ErrorKind::Dimension, "empty Liouvillian");

    s.sv = detail::singular_values(L.matrix());
    const double smax = s.sv.front();
    if (!(smax > 0.0)) {
        throw Error(ErrorKind::NonUniqueSteadyState, "Liouvillian is identically zero");
    }
    if (n >= 2) {
        const double second = s.sv[static_cast<std::size_t>(n - 2)];
        if (second <= opts.uniqueness_gap * smax) {
            std::ostringstream msg;
            msg << "second-smallest singular value " << second << " <= " << opts.uniqueness_gap
                << " * " << smax;
            throw Error(ErrorKind::NonUniqueSteadyState, msg.str());
        }
    }

    s.constrained = L.matrix();
    s.constrained.row(0).setZero();
    for (Eigen::Index k = 0; k < d; ++k) s.constrained(0, k + k * d) = 1.0;
    s.factors = s.constrained;
    if (!detail::lu_factor(s.factors, s.pivots)) {
        throw Error(ErrorKind::NonUniqueSteadyState, "trace-constrained Liouvillian is singular");
    }

    const Vector x = s.solve(Vector::Zero(n), 1.0);
    s.rho0 = DensityMatrix::from_raw(Eigen::Map<const Matrix>(x.data(), d, d));
    s.residual = (L.matrix() * vectorize(s.rho0.op())).norm();
    if (s.residual > opts.steady_residual_tol * smax) {
        std::ostringstream msg;
        msg << "steady-state residual " << s.residual << " exceeds " << opts.steady_residual_tol
            << " * ||L||";
        throw Error(ErrorKind::NumericalFailure, msg.str());
    }
}

StationarySolver::~StationarySolver() = default;
StationarySolver::StationarySolver(StationarySolver&&) noexcept = default;
StationarySolver& StationarySolver::operator=(StationarySolver&&) noexcept = default;

const Liouvillian& StationarySolver::liouvillian() const noexcept { return impl_->L; }
const std::vector<double>& StationarySolver::singular_values() const noexcept { return impl_->sv; }
double StationarySolver::spectral_norm() const noexcept { return impl_->sv.front(); }
const DensityMatrix& StationarySolver::steady_state() const noexcept { return impl_->rho0; }
double StationarySolver::steady_residual() const noexcept { return impl_->residual; }

ResponseMatrix StationarySolver::response(const Liouvillian& L1, std::string label) const {
    return response(L1, impl_->rho0, std::move(label));
}

ResponseMatrix StationarySolver::response(const Liouvillian& L1, const DensityMatrix& rho0,
                                          std::string label) const {
    const auto& s = *impl_;
    if (L1.hdim() != s.L.hdim() || rho0.dim() != s.L.hdim()) {
        throw Error(ErrorKind::Dimension, "perturbation dimension mismatch");
    }
    const auto d = static_cast<Eigen::Index>(s.L.hdim());
    const Vector source = L1.matrix() * vectorize(rho0.op());
    cplx tr = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) tr += source(k + k * d);
    const double bnorm = source.norm();
    if (std::abs(tr) > s.opts.source_trace_tol * std::max(1.0, bnorm)) {
        std::ostringstream msg;
        msg << "perturbation source has trace " << std::abs(tr);
        throw Error(ErrorKind::InvalidPerturbation, msg.str());
    }
    ResponseMatrix out{Operator::zero(s.L.hdim()), std::move(label), Basis::Working};
    if (bnorm == 0.0) return out;

    const Vector b = -source;
    const Vector x = s.solve(b, 0.0);
    const double residual = (s.L.matrix() * x - b).norm();
    if (residual > s.opts.response_residual_tol * bnorm) {
        std::ostringstream msg;
        msg << "response residual " << residual << " exceeds " << s.opts.response_residual_tol
            << " * ||L1 rho0|| = " << bnorm;
        throw Error(ErrorKind::IllConditioned, msg.str());
    }
    out.op = Operator(hermitize(Eigen::Map<const Matrix>(x.data(), d, d)));
    return out;
}

DensityMatrix steady_state(const Liouvillian& L, StationaryOptions opts) {
    return StationarySolver(L, opts).steady_state();
}

ResponseMatrix perturbed_response(const Liouvillian& L0, const Liouvillian& L1,
                                  const DensityMatrix& rho0, StationaryOptions opts) {
    return StationarySolver(L0, opts).response(L1, rho0);
}

} // namespace qsync
