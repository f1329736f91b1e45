// analysis.hpp: one-call pipeline from a model to its QFIM

#pragma once

#include <string>
#include <vector>

#include "qsync/metrology.hpp"
#include "qsync/models.hpp"
#include "qsync/spectral.hpp"
#include "qsync/stationary.hpp"
#include "qsync/symmetry.hpp"

namespace qsync {

struct AnalysisOptions {
    StationaryOptions stationary = {};
    QfiOptions qfi = {};
    LabelOptions labels = {};
    double zero_cutoff = SpectralDecomposition::kDefaultZeroCutoff;
};

struct Analysis {
    Liouvillian L0;
    StationarySolver solver;
    SpectralDecomposition decomp;
    ChargeAssignment charges;
    SectorLabeledDecomposition labeled;
    std::vector<std::size_t> drive_indices;
    std::vector<Liouvillian> drive_liouvillians;
    std::vector<ResponseMatrix> responses;
    QfiMatrix qfim;

    const DensityMatrix& rho0() const noexcept { return solver.steady_state(); }
};

// Empty label list selects every drive of the model.
Analysis analyze(const ModelSpec& model, const std::vector<std::string>& drive_labels = {},
                 AnalysisOptions opts = {});

} // namespace qsync
