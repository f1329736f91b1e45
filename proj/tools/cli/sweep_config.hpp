// sweep_config.hpp: sweep configuration documents

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli/model_source.hpp"

namespace qsync::cli {

inline const std::vector<std::string> kKnownMeasures = {"qfi", "qfim", "omega_tilde", "mu", "D", "eigendrives"};

struct Tolerances {
    double uniqueness_gap = 1e-12;
    double zero_cutoff = 1e-12;
    double omega_eps = 1e-3;
};

struct SweepConfig {
    std::string model;                 // vdp | tqo | custom-file
    std::filesystem::path model_file;  // custom-file only
    ParamMap params;                   // fixed overrides
    std::string sweep_parameter;
    std::vector<double> grid;
    std::string drive_selector;        // "all", a group name, or empty when drives is a list
    std::vector<std::string> drives;
    std::vector<std::string> outputs;
    std::filesystem::path output_path;
    Tolerances tolerances;
    unsigned threads = 1;
    nlohmann::json echo;               // normalized config, sufficient to re-run
};

// Relative paths inside the document resolve against base_dir.
SweepConfig parse_sweep_config(const std::string& text, const std::filesystem::path& base_dir = {});
SweepConfig load_sweep_config(const std::filesystem::path& path);

// {"start", "stop", "count", "spacing": "log" | "linear"} or an explicit list.
std::vector<double> expand_grid(const nlohmann::json& spec, const std::string& path = "grid");

ModelSource make_source(const SweepConfig& cfg);

} // namespace qsync::cli
