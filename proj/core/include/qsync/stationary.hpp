// stationary.hpp: steady states of a Liouvillian and their linear response
//
// The null vector and the response are both obtained from one LU factorization
// of L with its (0,0)-population row replaced by the trace functional. Because
// vec(I)† L = 0, that row is implied by the others, so the replaced system
// encodes "L x = b, Tr x = t" exactly whenever b is traceless.

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qsync/liouvillian.hpp"
#include "qsync/operator.hpp"

namespace qsync {

// Hermitian, unit trace, nonnegative spectrum.
class DensityMatrix {
public:
    static constexpr double kDefaultTraceTol = 1e-10;
    static constexpr double kClipWindow = 1e-10;

    DensityMatrix() = default;
    explicit DensityMatrix(Operator op, double trace_tol = kDefaultTraceTol);

    // Hermitize, normalize, and clip eigenvalues in [-kClipWindow, 0) to zero.
    // Anything more negative throws NumericalFailure.
    static DensityMatrix from_raw(const Matrix& raw);

    const Operator& op() const noexcept { return op_; }
    const Matrix& matrix() const noexcept { return op_.matrix(); }
    std::size_t dim() const noexcept { return op_.dim(); }
    double trace_tol() const noexcept { return trace_tol_; }

private:
    Operator op_;
    double trace_tol_ = kDefaultTraceTol;
};

enum class Basis { Working, Eigen };

// First-order change of the steady state per unit drive amplitude.
struct ResponseMatrix {
    Operator op;
    std::string drive_label;
    Basis basis = Basis::Working;
};

struct StationaryOptions {
    // σ_{second smallest}(L) must exceed this times σ_max(L).
    double uniqueness_gap = 1e-12;
    double steady_residual_tol = 1e-10;
    double response_residual_tol = 1e-9;
    double source_trace_tol = 1e-10;
};

// Owns the factorization of one Liouvillian; steady state and any number of
// responses reuse it.
class StationarySolver {
public:
    explicit StationarySolver(const Liouvillian& L, StationaryOptions opts = {});
    ~StationarySolver();
    StationarySolver(StationarySolver&&) noexcept;
    StationarySolver& operator=(StationarySolver&&) noexcept;

    const Liouvillian& liouvillian() const noexcept;
    const std::vector<double>& singular_values() const noexcept;  // descending
    double spectral_norm() const noexcept;

    const DensityMatrix& steady_state() const noexcept;
    double steady_residual() const noexcept;

    // X = -L0⁻¹ L1 ρ0 restricted to Tr X = 0, with ρ0 this solver's steady state.
    ResponseMatrix response(const Liouvillian& L1, std::string label = {}) const;
    ResponseMatrix response(const Liouvillian& L1, const DensityMatrix& rho0,
                            std::string label = {}) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

DensityMatrix steady_state(const Liouvillian& L, StationaryOptions opts = {});

ResponseMatrix perturbed_response(const Liouvillian& L0, const Liouvillian& L1,
                                  const DensityMatrix& rho0, StationaryOptions opts = {});

} // namespace qsync
