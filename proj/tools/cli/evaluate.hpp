// evaluate.hpp: per-point measure evaluation shared by sweep and report

#pragma once

#include <map>
#include <string>
#include <vector>

#include "cli/model_source.hpp"
#include "cli/sweep_config.hpp"
#include "qsync/analysis.hpp"

namespace qsync::cli {

// Column names of one measure's CSV, excluding the sweep column and status.
struct MeasureLayout {
    std::string measure;
    std::vector<std::string> columns;
};

struct MeasureRow {
    std::vector<double> values;
    std::string status = "ok";
    std::string message;
};

struct PointResult {
    double value = 0.0;
    std::string status = "ok";
    std::string message;
    std::size_t hdim = 0;
    std::size_t n_trunc = 0;
    std::size_t growth_steps = 0;
    double tail = 0.0;
    double reference_rate = 1.0;
    bool top_degenerate = false;
    std::string omega_method;
    std::map<std::string, MeasureRow> rows;
};

struct EvalContext {
    const ModelSource* source = nullptr;
    ParamMap base_params;
    std::string sweep_parameter;
    std::vector<std::string> drives;
    std::vector<std::string> outputs;
    Tolerances tolerances;
};

std::vector<MeasureLayout> measure_layouts(const EvalContext& ctx);

// Never throws for solver failures; they are recorded in the result.
PointResult evaluate_point(const EvalContext& ctx, double value);

AnalysisOptions analysis_options(const Tolerances& tol);

} // namespace qsync::cli
