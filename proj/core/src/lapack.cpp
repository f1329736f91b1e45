#include "lapack.hpp"

#include <complex>

#include <lapacke.h>

#include "qsync/error.hpp"

namespace qsync::detail {

namespace {
lapack_complex_double* as_lapack(cplx* p) { return reinterpret_cast<lapack_complex_double*>(p); }
} // namespace

std::vector<double> singular_values(const Matrix& a) {
    Matrix work = a;
    const auto m = static_cast<lapack_int>(work.rows());
    const auto n = static_cast<lapack_int>(work.cols());
    std::vector<double> s(static_cast<std::size_t>(std::min(m, n)));
    const lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, as_lapack(work.data()), m,
                                           s.data(), nullptr, 1, nullptr, 1);
    if (info != 0) {
        throw Error(ErrorKind::NumericalFailure, "zgesdd failed with info=" + std::to_string(info));
    }
    return s;
}

bool lu_factor(Matrix& a, std::vector<int>& pivots) {
    const auto n = static_cast<lapack_int>(a.rows());
    std::vector<lapack_int> ipiv(static_cast<std::size_t>(n));
    const lapack_int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, n, n, as_lapack(a.data()), n, ipiv.data());
    if (info < 0) {
        throw Error(ErrorKind::NumericalFailure, "zgetrf failed with info=" + std::to_string(info));
    }
    pivots.assign(ipiv.begin(), ipiv.end());
    return info == 0;
}

Vector lu_solve(const Matrix& factors, const std::vector<int>& pivots, const Vector& b) {
    const auto n = static_cast<lapack_int>(factors.rows());
    Vector x = b;
    std::vector<lapack_int> ipiv(pivots.begin(), pivots.end());
    const lapack_int info =
        LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'N', n, 1, as_lapack(const_cast<cplx*>(factors.data())), n,
                       ipiv.data(), as_lapack(x.data()), n);
    if (info != 0) {
        throw Error(ErrorKind::NumericalFailure, "zgetrs failed with info=" + std::to_string(info));
    }
    return x;
}

} // namespace qsync::detail
