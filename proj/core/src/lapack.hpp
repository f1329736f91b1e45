// lapack.hpp: thin wrappers over the LAPACK routines the core needs

#pragma once

#include <vector>

#include "qsync/operator.hpp"

namespace qsync::detail {

// Singular values only, descending. Input is copied.
std::vector<double> singular_values(const Matrix& a);

// In-place LU with partial pivoting (zgetrf). Returns false if exactly singular.
bool lu_factor(Matrix& a, std::vector<int>& pivots);

// Solves A x = b given the factors from lu_factor.
Vector lu_solve(const Matrix& factors, const std::vector<int>& pivots, const Vector& b);

} // namespace qsync::detail
