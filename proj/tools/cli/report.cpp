#include "cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "qsync/analysis.hpp"
#include "qsync/error.hpp"
#include "qsync/version.hpp"
#include "cli/evaluate.hpp"
#include "cli/sweep.hpp"

namespace qsync::cli {

using nlohmann::json;

QfimReport qfim_report(const ModelSource& source, const ParamMap& overrides, const std::vector<std::string>& drives,
                       const Tolerances& tol) {
    QfimReport r;
    r.model = source.name();
    r.params = source.parameters(overrides);
    const BuiltModel built = source.build(r.params);
    r.drives = drives.empty() ? built.spec.drives.labels() : drives;
    const Analysis a = analyze(built.spec, r.drives, analysis_options(tol));
    r.reference_rate_name = built.spec.reference_rate_name;
    r.reference_rate = built.spec.reference_rate;
    const double r2 = r.reference_rate * r.reference_rate;
    r.qfim = r2 * a.qfim.matrix;
    const EigendriveResult e = optimal_drive(a.qfim);
    r.eigenvalues = r2 * e.eigenvalues;
    r.eigenvectors = e.eigenvectors;
    r.n_opt = e.n_opt;
    r.top_degenerate = e.top_degenerate;
    for (std::size_t m = 0; m < r.drives.size(); ++m) {
        try {
            r.D.push_back(orthogonality(a.qfim, m));
        } catch (const Error& err) {
            r.D.push_back(std::numeric_limits<double>::quiet_NaN());
            r.D_status = to_string(err.kind());
        }
    }
    return r;
}

void print_report(std::ostream& out, const QfimReport& r) {
    char buf[64];
    out << "model " << r.model << "  (values in units of " << r.reference_rate_name << "^-2)\n";
    for (const auto& [k, v] : r.params) {
        std::snprintf(buf, sizeof buf, "%.6g", v);
        out << "  " << k << " = " << buf << '\n';
    }
    out << "\nQFIM\n" << std::string(10, ' ');
    for (const auto& l : r.drives) {
        std::snprintf(buf, sizeof buf, "%14s", l.c_str());
        out << buf;
    }
    out << '\n';
    for (Eigen::Index i = 0; i < r.qfim.rows(); ++i) {
        std::snprintf(buf, sizeof buf, "%-10s", r.drives[static_cast<std::size_t>(i)].c_str());
        out << buf;
        for (Eigen::Index j = 0; j < r.qfim.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%14.6e", r.qfim(i, j));
            out << buf;
        }
        out << '\n';
    }
    out << "\neigenvalues\n";
    for (Eigen::Index k = 0; k < r.eigenvalues.size(); ++k) {
        std::snprintf(buf, sizeof buf, "  %14.6e", r.eigenvalues(k));
        out << buf << '\n';
    }
    out << "\nn_opt" << (r.top_degenerate ? "  (top eigenvalue degenerate)" : "") << '\n';
    for (Eigen::Index k = 0; k < r.n_opt.size(); ++k) {
        std::snprintf(buf, sizeof buf, "  %-10s %12.8f", r.drives[static_cast<std::size_t>(k)].c_str(), r.n_opt(k));
        out << buf << '\n';
    }
    out << "\nD_m" << (r.D_status != "ok" ? "  (" + r.D_status + ")" : "") << '\n';
    for (std::size_t k = 0; k < r.D.size(); ++k) {
        std::snprintf(buf, sizeof buf, "  %-10s %12.8f", r.drives[k].c_str(), r.D[k]);
        out << buf << '\n';
    }
}

json report_json(const QfimReport& r) {
    auto to_rows = [](const RealMatrix& m) {
        json rows = json::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
            rows.push_back(row);
        }
        return rows;
    };
    auto to_list = [](const RealVector& v) {
        json a = json::array();
        for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
        return a;
    };
    json D = json::array();
    for (double v : r.D) D.push_back(std::isnan(v) ? json(nullptr) : json(v));
    return {{"version", std::string(kVersion)},
            {"model", r.model},
            {"params", r.params},
            {"reference_rate", {{"name", r.reference_rate_name}, {"value", r.reference_rate}}},
            {"drives", r.drives},
            {"qfim", to_rows(r.qfim)},
            {"eigenvalues", to_list(r.eigenvalues)},
            {"eigenvectors", to_rows(r.eigenvectors)},
            {"n_opt", to_list(r.n_opt)},
            {"top_degenerate", r.top_degenerate},
            {"D", D},
            {"D_status", r.D_status}};
}

} // namespace qsync::cli
