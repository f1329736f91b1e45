#include "qsync/operator.hpp"

#include <cmath>
#include <string>

#include "qsync/error.hpp"

namespace qsync {

Operator::Operator(Matrix entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols()) {
        throw Error(ErrorKind::Dimension, "operator must be square, got " +
                                              std::to_string(m_.rows()) + "x" +
                                              std::to_string(m_.cols()));
    }
}

Operator Operator::zero(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return Operator(Matrix::Zero(n, n));
}

Operator Operator::identity(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return Operator(Matrix::Identity(n, n));
}

double Operator::max_abs() const {
    return m_.size() == 0 ? 0.0 : m_.cwiseAbs().maxCoeff();
}

bool Operator::is_hermitian(double rel_tol) const {
    const double scale = max_abs();
    if (scale == 0.0) return true;
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

Operator operator+(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim()) throw Error(ErrorKind::Dimension, "operator sum: dimension mismatch");
    return Operator(a.m_ + b.m_);
}

Operator operator-(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim()) throw Error(ErrorKind::Dimension, "operator difference: dimension mismatch");
    return Operator(a.m_ - b.m_);
}

Operator operator*(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim()) throw Error(ErrorKind::Dimension, "operator product: dimension mismatch");
    return Operator(a.m_ * b.m_);
}

Operator operator*(cplx s, const Operator& a) { return Operator(s * a.m_); }

Vector vectorize(const Operator& op) {
    // Eigen storage is column-major, which is exactly column stacking.
    const Matrix& m = op.matrix();
    return Eigen::Map<const Vector>(m.data(), m.size());
}

Operator devectorize(const Vector& v) {
    const auto len = v.size();
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(len))));
    if (d * d != len) {
        throw Error(ErrorKind::Dimension,
                    "devectorize: length " + std::to_string(len) + " is not a perfect square");
    }
    return Operator(Eigen::Map<const Matrix>(v.data(), d, d));
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix hermitize(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

} // namespace qsync
