// operator.hpp: dense Hilbert-space operators, vectorization, and small algebra helpers

#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace qsync {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Square complex matrix acting on a d-dimensional Hilbert space.
class Operator {
public:
    Operator() = default;
    explicit Operator(Matrix entries);

    static Operator zero(std::size_t dim);
    static Operator identity(std::size_t dim);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    const Matrix& matrix() const noexcept { return m_; }

    cplx operator()(std::size_t i, std::size_t j) const {
        return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

    Operator adjoint() const { return Operator(m_.adjoint()); }
    cplx trace() const { return m_.trace(); }
    double max_abs() const;
    double frobenius_norm() const { return m_.norm(); }

    // max|A - A†| <= rel_tol * max|A| (zero operator is Hermitian).
    bool is_hermitian(double rel_tol = 1e-12) const;

    friend Operator operator+(const Operator& a, const Operator& b);
    friend Operator operator-(const Operator& a, const Operator& b);
    friend Operator operator*(const Operator& a, const Operator& b);
    friend Operator operator*(cplx s, const Operator& a);

private:
    Matrix m_;
};

// Column-stacking: vec(A)[i + j*d] = A(i, j).
Vector vectorize(const Operator& op);
Operator devectorize(const Vector& v);

// Kronecker product a ⊗ b.
Matrix kron(const Matrix& a, const Matrix& b);

// (A + A†)/2
Matrix hermitize(const Matrix& a);

} // namespace qsync
