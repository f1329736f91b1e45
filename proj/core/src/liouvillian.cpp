#include "qsync/liouvillian.hpp"

#include <string>

#include "qsync/error.hpp"

namespace qsync {

Liouvillian::Liouvillian(std::size_t hdim, Matrix super) : hdim_(hdim), m_(std::move(super)) {
    const auto n = static_cast<Eigen::Index>(hdim * hdim);
    if (m_.rows() != n || m_.cols() != n) {
        throw Error(ErrorKind::Dimension, "Liouvillian for d=" + std::to_string(hdim) +
                                              " must be " + std::to_string(n) + "x" +
                                              std::to_string(n));
    }
}

Liouvillian Liouvillian::zero(std::size_t hdim) {
    const auto n = static_cast<Eigen::Index>(hdim * hdim);
    return Liouvillian(hdim, Matrix::Zero(n, n));
}

double Liouvillian::trace_preservation_defect() const {
    const double scale = m_.norm();
    if (scale == 0.0) return 0.0;
    const Vector id = vectorize(Operator::identity(hdim_));
    return (id.adjoint() * m_).norm() / scale;
}

Operator Liouvillian::apply(const Operator& rho) const {
    if (rho.dim() != hdim_) throw Error(ErrorKind::Dimension, "Liouvillian::apply: dimension mismatch");
    return devectorize(m_ * vectorize(rho));
}

Liouvillian operator+(const Liouvillian& a, const Liouvillian& b) {
    if (a.hdim_ != b.hdim_) throw Error(ErrorKind::Dimension, "Liouvillian sum: dimension mismatch");
    return Liouvillian(a.hdim_, a.m_ + b.m_);
}

Liouvillian operator*(double s, const Liouvillian& a) { return Liouvillian(a.hdim_, s * a.m_); }

namespace {

void accumulate_dissipator(Matrix& out, const Matrix& o) {
    const auto d = o.rows();
    const Matrix id = Matrix::Identity(d, d);
    const Matrix odo = o.adjoint() * o;
    out += kron(o.conjugate(), o);
    out -= 0.5 * kron(id, odo);
    out -= 0.5 * kron(odo.transpose(), id);
}

} // namespace

Liouvillian build_dissipator(const Operator& jump) {
    if (jump.dim() < 2) throw Error(ErrorKind::Dimension, "jump operator dimension must be >= 2");
    const auto d = jump.dim();
    Liouvillian out = Liouvillian::zero(d);
    Matrix m = out.matrix();
    accumulate_dissipator(m, jump.matrix());
    return Liouvillian(d, std::move(m));
}

Liouvillian build_commutator(const Operator& hamiltonian) {
    const auto d = static_cast<Eigen::Index>(hamiltonian.dim());
    const Matrix id = Matrix::Identity(d, d);
    const Matrix& h = hamiltonian.matrix();
    return Liouvillian(hamiltonian.dim(),
                       cplx(0.0, -1.0) * (kron(id, h) - kron(h.transpose(), id)));
}

Liouvillian build_liouvillian(const Operator& hamiltonian, std::span<const Operator> jumps) {
    if (!hamiltonian.is_hermitian(1e-12)) {
        throw Error(ErrorKind::Validation, "Hamiltonian is not Hermitian");
    }
    const auto d = hamiltonian.dim();
    Matrix m = build_commutator(hamiltonian).matrix();
    for (const auto& jump : jumps) {
        if (jump.dim() != d) {
            throw Error(ErrorKind::Dimension, "jump dimension " + std::to_string(jump.dim()) +
                                                  " does not match Hamiltonian dimension " +
                                                  std::to_string(d));
        }
        accumulate_dissipator(m, jump.matrix());
    }
    return Liouvillian(d, std::move(m));
}

} // namespace qsync
