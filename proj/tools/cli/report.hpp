// report.hpp: single-shot QFIM report

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli/model_source.hpp"
#include "cli/sweep_config.hpp"

namespace qsync::cli {

struct QfimReport {
    std::string model;
    ParamMap params;
    std::string reference_rate_name;
    double reference_rate = 1.0;
    std::vector<std::string> drives;
    RealMatrix qfim;            // in units of reference_rate^-2
    RealVector eigenvalues;     // descending, same units
    RealMatrix eigenvectors;
    RealVector n_opt;
    bool top_degenerate = false;
    std::vector<double> D;      // NaN when the QFIM is singular
    std::string D_status = "ok";
};

QfimReport qfim_report(const ModelSource& source, const ParamMap& overrides,
                       const std::vector<std::string>& drives, const Tolerances& tol = {});

void print_report(std::ostream& out, const QfimReport& r);
nlohmann::json report_json(const QfimReport& r);

} // namespace qsync::cli
