#include "qsync/analysis.hpp"

#include "qsync/error.hpp"

namespace qsync {

Analysis analyze(const ModelSpec& model, const std::vector<std::string>& drive_labels, AnalysisOptions opts) {
    Liouvillian L0 = model.liouvillian();
    StationarySolver solver(L0, opts.stationary);
    SpectralDecomposition decomp = spectral_decompose(solver.steady_state(), opts.zero_cutoff);
    ChargeAssignment charges = assign_charges(model.symmetry_generator, model.hdim);
    SectorLabeledDecomposition labeled = label_sectors(decomp, charges, opts.labels);

    std::vector<std::size_t> indices;
    if (drive_labels.empty()) {
        for (std::size_t m = 0; m < model.drives.size(); ++m) indices.push_back(m);
    } else {
        for (const auto& l : drive_labels) indices.push_back(model.drives.index_of(l));
    }

    std::vector<Liouvillian> drive_ls;
    std::vector<ResponseMatrix> responses;
    for (auto m : indices) {
        drive_ls.push_back(model.drive_liouvillian(m));
        responses.push_back(solver.response(drive_ls.back(), model.drives.labels()[m]));
    }
    QfiMatrix F = qfim(labeled, responses, opts.qfi);

    return Analysis{std::move(L0),      std::move(solver),   std::move(decomp),
                    std::move(charges), std::move(labeled),  std::move(indices),
                    std::move(drive_ls), std::move(responses), std::move(F)};
}

} // namespace qsync
