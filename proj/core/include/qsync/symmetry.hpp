// symmetry.hpp: U(1) charge sectors and the symmetric / symmetry-breaking split
//
// A generator Ô defines sectors by its eigenvalues. Liouville basis elements
// |i><j| carry the charge difference c_i - c_j; a U(1)-symmetric Liouvillian
// only connects elements with equal differences.

#pragma once

#include <cstddef>
#include <vector>

#include "qsync/liouvillian.hpp"
#include "qsync/spectral.hpp"
#include "qsync/stationary.hpp"

namespace qsync {

struct ChargeAssignment {
    static constexpr double kDefaultGroupingTol = 1e-9;

    Operator generator;
    RealVector charges;          // one per column of `basis`
    Matrix basis;                // generator eigenbasis in working coordinates
    bool diagonal = true;        // basis is the identity
    std::vector<int> sector_of;  // sector label per basis vector
    std::vector<double> sector_charge;
    double grouping_tol = kDefaultGroupingTol;

    std::size_t sector_count() const noexcept { return sector_charge.size(); }
};

ChargeAssignment assign_charges(const Operator& generator, std::size_t hdim,
                                double grouping_tol = ChargeAssignment::kDefaultGroupingTol);

struct SectorLabeledDecomposition {
    SpectralDecomposition decomp;
    std::vector<int> sector_of;  // per eigenvector
    std::vector<double> charge_of;
};

struct LabelOptions {
    double commutator_tol = 1e-9;
    double degeneracy_tol = 1e-10;
    double leakage_tol = 1e-8;
};

// Rotates degenerate eigenvalue blocks onto generator eigenvectors, then
// assigns each eigenvector to the unique sector that carries its weight.
SectorLabeledDecomposition label_sectors(const SpectralDecomposition& decomp,
                                         const ChargeAssignment& charges,
                                         LabelOptions opts = {});

// Express a working-basis response in the labeled eigenbasis.
ResponseMatrix to_eigenbasis(const ResponseMatrix& resp, const SectorLabeledDecomposition& labeled);

struct SplitResponse {
    ResponseMatrix symmetric;  // same-sector elements
    ResponseMatrix breaking;   // cross-sector elements
};

// resp must be in the labeled eigenbasis; the two parts partition its entries.
SplitResponse split_response(const ResponseMatrix& resp, const SectorLabeledDecomposition& labeled);

// Largest |L_ab| connecting Liouville elements of different charge difference,
// relative to max|L|.
double u1_violation(const Liouvillian& L, const ChargeAssignment& charges);

bool verify_u1(const Liouvillian& L, const ChargeAssignment& charges, double tol = 1e-10);

} // namespace qsync
