// sweep.hpp: grid sweeps to CSV files plus a run manifest

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli/evaluate.hpp"
#include "cli/sweep_config.hpp"

namespace qsync::cli {

struct SweepOutcome {
    std::vector<PointResult> points;  // grid order
    std::vector<std::filesystem::path> files;
    nlohmann::json manifest;
    bool all_ok() const;
};

// Validates the whole configuration before the first solve.
SweepOutcome run_sweep(const SweepConfig& cfg);

std::string format_number(double v);

} // namespace qsync::cli
