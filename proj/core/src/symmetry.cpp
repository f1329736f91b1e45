#include "qsync/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qsync/error.hpp"

namespace qsync {

ChargeAssignment assign_charges(const Operator& generator, std::size_t hdim, double grouping_tol) {
    if (generator.dim() != hdim) {
        throw Error(ErrorKind::Dimension, "symmetry generator dimension does not match hdim");
    }
    if (!generator.is_hermitian(1e-10)) {
        throw Error(ErrorKind::Validation, "symmetry generator is not Hermitian");
    }
    ChargeAssignment out;
    out.generator = generator;
    out.grouping_tol = grouping_tol;
    const Matrix& g = generator.matrix();
    const auto d = static_cast<Eigen::Index>(hdim);

    const Matrix offdiag = g - Matrix(g.diagonal().asDiagonal());
    out.diagonal = offdiag.size() == 0 || offdiag.cwiseAbs().maxCoeff() <= 1e-10;
    if (out.diagonal) {
        out.charges = g.diagonal().real();
        out.basis = Matrix::Identity(d, d);
    } else {
        Eigen::SelfAdjointEigenSolver<Matrix> es(g);
        out.charges = es.eigenvalues();
        out.basis = es.eigenvectors();
    }

    // Sort charges and open a new sector whenever the gap exceeds the tolerance.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](auto a, auto b) { return out.charges(a) < out.charges(b); });
    out.sector_of.assign(static_cast<std::size_t>(d), -1);
    int label = -1;
    double last = 0.0;
    for (auto i : order) {
        const double c = out.charges(i);
        if (label < 0 || c - last > grouping_tol) {
            ++label;
            out.sector_charge.push_back(c);
        }
        last = c;
        out.sector_of[static_cast<std::size_t>(i)] = label;
    }
    return out;
}

SectorLabeledDecomposition label_sectors(const SpectralDecomposition& decomp,
                                         const ChargeAssignment& charges, LabelOptions opts) {
    const auto d = static_cast<Eigen::Index>(decomp.dim());
    if (charges.generator.dim() != decomp.dim()) {
        throw Error(ErrorKind::Dimension, "label_sectors: dimension mismatch");
    }
    const Matrix& g = charges.generator.matrix();
    const Matrix rho = decomp.reconstruct();
    const double comm = (rho * g - g * rho).norm();
    if (comm > opts.commutator_tol) {
        std::ostringstream msg;
        msg << "steady state does not commute with the symmetry generator (||[rho, O]|| = " << comm
            << ")";
        throw Error(ErrorKind::SymmetryViolation, msg.str());
    }

    SectorLabeledDecomposition out;
    out.decomp = decomp;
    Matrix& v = out.decomp.eigenvectors;
    const RealVector& q = out.decomp.eigenvalues;

    // Re-diagonalize the generator inside each degenerate eigenvalue block.
    Eigen::Index start = 0;
    while (start < d) {
        Eigen::Index stop = start + 1;
        while (stop < d && std::abs(q(stop - 1) - q(stop)) <= opts.degeneracy_tol) ++stop;
        const Eigen::Index m = stop - start;
        if (m > 1) {
            const Matrix block = v.middleCols(start, m);
            const Matrix gb = hermitize(block.adjoint() * g * block);
            Eigen::SelfAdjointEigenSolver<Matrix> es(gb);
            v.middleCols(start, m) = block * es.eigenvectors();
        }
        start = stop;
    }

    const Matrix coords = charges.basis.adjoint() * v;
    const auto nsec = static_cast<Eigen::Index>(charges.sector_count());
    out.sector_of.resize(static_cast<std::size_t>(d));
    out.charge_of.resize(static_cast<std::size_t>(d));
    for (Eigen::Index k = 0; k < d; ++k) {
        RealVector weight = RealVector::Zero(nsec);
        for (Eigen::Index i = 0; i < d; ++i) {
            weight(charges.sector_of[static_cast<std::size_t>(i)]) += std::norm(coords(i, k));
        }
        Eigen::Index best = 0;
        const double top = weight.maxCoeff(&best);
        const double leak = weight.sum() - top;
        if (leak > opts.leakage_tol) {
            std::ostringstream msg;
            msg << "eigenvector " << k << " spans several charge sectors (leakage " << leak << ")";
            throw Error(ErrorKind::SymmetryViolation, msg.str());
        }
        out.sector_of[static_cast<std::size_t>(k)] = static_cast<int>(best);
        out.charge_of[static_cast<std::size_t>(k)] = charges.sector_charge[static_cast<std::size_t>(best)];
    }
    return out;
}

ResponseMatrix to_eigenbasis(const ResponseMatrix& resp, const SectorLabeledDecomposition& labeled) {
    if (resp.basis == Basis::Eigen) return resp;
    if (resp.op.dim() != labeled.decomp.dim()) {
        throw Error(ErrorKind::Dimension, "to_eigenbasis: dimension mismatch");
    }
    return ResponseMatrix{Operator(labeled.decomp.to_eigenbasis(resp.op.matrix())), resp.drive_label,
                          Basis::Eigen};
}

SplitResponse split_response(const ResponseMatrix& resp, const SectorLabeledDecomposition& labeled) {
    if (resp.basis != Basis::Eigen) {
        throw Error(ErrorKind::Validation, "split_response expects a response in the eigenbasis");
    }
    const auto d = static_cast<Eigen::Index>(labeled.decomp.dim());
    if (static_cast<Eigen::Index>(resp.op.dim()) != d) {
        throw Error(ErrorKind::Dimension, "split_response: dimension mismatch");
    }
    Matrix sym = Matrix::Zero(d, d);
    Matrix brk = Matrix::Zero(d, d);
    const Matrix& r = resp.op.matrix();
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
            const bool same = labeled.sector_of[static_cast<std::size_t>(i)] ==
                              labeled.sector_of[static_cast<std::size_t>(j)];
            (same ? sym : brk)(i, j) = r(i, j);
        }
    }
    return SplitResponse{ResponseMatrix{Operator(std::move(sym)), resp.drive_label, Basis::Eigen},
                         ResponseMatrix{Operator(std::move(brk)), resp.drive_label, Basis::Eigen}};
}

double u1_violation(const Liouvillian& L, const ChargeAssignment& charges) {
    const auto d = static_cast<Eigen::Index>(L.hdim());
    if (charges.generator.dim() != L.hdim()) {
        throw Error(ErrorKind::Dimension, "u1_violation: dimension mismatch");
    }
    Matrix m = L.matrix();
    if (!charges.diagonal) {
        // vec(U X U†) = (Ū ⊗ U) vec(X)
        const Matrix s = kron(charges.basis.conjugate(), charges.basis);
        m = s.adjoint() * m * s;
    }
    const double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    const auto n = d * d;
    RealVector diff(n);
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) diff(i + j * d) = charges.charges(i) - charges.charges(j);
    }
    double worst = 0.0;
    for (Eigen::Index b = 0; b < n; ++b) {
        for (Eigen::Index a = 0; a < n; ++a) {
            if (std::abs(diff(a) - diff(b)) > charges.grouping_tol) {
                worst = std::max(worst, std::abs(m(a, b)));
            }
        }
    }
    return worst / scale;
}

bool verify_u1(const Liouvillian& L, const ChargeAssignment& charges, double tol) {
    return u1_violation(L, charges) <= tol;
}

} // namespace qsync
