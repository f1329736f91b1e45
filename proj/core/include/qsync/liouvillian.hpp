// liouvillian.hpp: Lindblad superoperators in the column-stacking convention
//
// With vec(AρB) = (Bᵀ ⊗ A) vec(ρ) the generator reads
//   L = -i(I⊗H - Hᵀ⊗I) + Σ_k ( Ō_k⊗O_k - ½ I⊗O_k†O_k - ½ (O_k†O_k)ᵀ⊗I ).

#pragma once

#include <cstddef>
#include <span>

#include "qsync/operator.hpp"

namespace qsync {

enum class Vectorization { ColumnStacking };

class Liouvillian {
public:
    Liouvillian() = default;
    Liouvillian(std::size_t hdim, Matrix super);

    static Liouvillian zero(std::size_t hdim);

    std::size_t hdim() const noexcept { return hdim_; }
    const Matrix& matrix() const noexcept { return m_; }
    Vectorization convention() const noexcept { return Vectorization::ColumnStacking; }

    // |vec(I)† L| relative to the Frobenius norm of L.
    double trace_preservation_defect() const;

    // L applied to an operator, returned as an operator.
    Operator apply(const Operator& rho) const;

    friend Liouvillian operator+(const Liouvillian& a, const Liouvillian& b);
    friend Liouvillian operator*(double s, const Liouvillian& a);

private:
    std::size_t hdim_ = 0;
    Matrix m_;
};

Liouvillian build_dissipator(const Operator& jump);

// -i[H, ·] alone.
Liouvillian build_commutator(const Operator& hamiltonian);

// -i[H, ·] + Σ D[jump]; H must be Hermitian to 1e-12 relative.
Liouvillian build_liouvillian(const Operator& hamiltonian, std::span<const Operator> jumps);

} // namespace qsync
