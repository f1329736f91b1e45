#include "cli/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "qsync/error.hpp"
#include "qsync/version.hpp"

namespace qsync::cli {

using nlohmann::json;

bool SweepOutcome::all_ok() const {
    for (const auto& p : points) {
        if (p.status != "ok") return false;
    }
    return true;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

namespace {

void write_csv(const std::filesystem::path& path, const std::string& sweep_parameter, const MeasureLayout& layout,
               const std::vector<PointResult>& points) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Validation, "cannot write '" + path.string() + "'");
    out << sweep_parameter;
    for (const auto& c : layout.columns) out << ',' << c;
    out << ",status\n";
    for (const auto& p : points) {
        const MeasureRow& row = p.rows.at(layout.measure);
        out << format_number(p.value);
        for (double v : row.values) out << ',' << format_number(v);
        out << ',' << row.status << '\n';
    }
}

json checks_for(const std::vector<PointResult>& points, const std::vector<MeasureLayout>& layouts,
                std::size_t n_obs) {
    json checks = json::array();
    std::size_t failed = 0;
    for (const auto& p : points) failed += p.status != "ok";
    checks.push_back({{"name", "all points solved"},
                      {"pass", failed == 0},
                      {"detail", std::to_string(points.size() - failed) + "/" + std::to_string(points.size())}});

    bool have_qfi = false;
    bool have_mu = false;
    bool have_d = false;
    for (const auto& l : layouts) {
        have_qfi |= l.measure == "qfi";
        have_mu |= l.measure == "mu";
        have_d |= l.measure == "D";
    }
    if (have_d) {
        bool ok = true;
        for (const auto& p : points) {
            for (double v : p.rows.at("D").values) {
                if (!std::isnan(v) && (v < 0.0 || v > 1.0 + 1e-10)) ok = false;
            }
        }
        checks.push_back({{"name", "0 <= D_m <= 1"}, {"pass", ok}});
    }
    if (have_qfi && have_mu && n_obs > 0) {
        // qfi rows start with one column per drive; mu rows are drive-major.
        bool ok = true;
        for (const auto& p : points) {
            const auto& F = p.rows.at("qfi").values;
            const auto& mu = p.rows.at("mu").values;
            for (std::size_t k = 0; k < mu.size(); ++k) {
                const double f = F[k / n_obs];
                if (!std::isnan(mu[k]) && !std::isnan(f) && mu[k] > f * (1.0 + 1e-9)) ok = false;
            }
        }
        checks.push_back({{"name", "mu <= F (Cramer-Rao)"}, {"pass", ok}});
    }
    return checks;
}

} // namespace

SweepOutcome run_sweep(const SweepConfig& cfg) {
    const ModelSource source = make_source(cfg);
    EvalContext ctx;
    ctx.source = &source;
    ctx.base_params = cfg.params;
    ctx.sweep_parameter = cfg.sweep_parameter;
    ctx.outputs = cfg.outputs;
    ctx.tolerances = cfg.tolerances;
    ctx.drives = cfg.drives.empty() ? source.resolve_drives(cfg.drive_selector) : cfg.drives;

    // Fail fast on names before any solve.
    if (cfg.outputs.empty()) throw Error(ErrorKind::Validation, "no measures requested");
    const auto names = source.parameter_names();
    if (std::find(names.begin(), names.end(), cfg.sweep_parameter) == names.end()) {
        throw Error(ErrorKind::Validation, "model '" + source.name() + "' has no parameter '" + cfg.sweep_parameter + "'");
    }
    (void)source.parameters(cfg.params);
    const auto all_drives = source.drive_labels();
    for (const auto& d : ctx.drives) {
        if (std::find(all_drives.begin(), all_drives.end(), d) == all_drives.end()) {
            throw Error(ErrorKind::Validation, "model '" + source.name() + "' has no drive '" + d + "'");
        }
    }

    const auto layouts = measure_layouts(ctx);
    SweepOutcome out;
    out.points.resize(cfg.grid.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < cfg.grid.size(); k = next++) {
            out.points[k] = evaluate_point(ctx, cfg.grid[k]);
        }
    };
    const unsigned n_threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.grid.size())));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::filesystem::create_directories(cfg.output_path);
    for (const auto& layout : layouts) {
        const auto path = cfg.output_path / (layout.measure + ".csv");
        write_csv(path, cfg.sweep_parameter, layout, out.points);
        out.files.push_back(path);
    }

    json points = json::array();
    for (std::size_t k = 0; k < out.points.size(); ++k) {
        const auto& p = out.points[k];
        json j = {{"index", k},
                  {cfg.sweep_parameter, p.value},
                  {"status", p.status},
                  {"hdim", p.hdim},
                  {"truncation", p.n_trunc},
                  {"truncation_growth_steps", p.growth_steps},
                  {"truncation_tail", p.tail},
                  {"reference_rate", p.reference_rate},
                  {"top_degenerate", p.top_degenerate}};
        if (!p.message.empty()) j["message"] = p.message;
        if (!p.omega_method.empty()) j["omega_tilde_method"] = p.omega_method;
        points.push_back(std::move(j));
    }
    json config = cfg.echo;
    config["drives_resolved"] = ctx.drives;
    out.manifest = {{"config", config},
                    {"version", std::string(kVersion)},
                    {"points", points},
                    {"checks", checks_for(out.points, layouts, source.observable_labels().size())}};
    const auto manifest_path = cfg.output_path / "manifest.json";
    std::ofstream mf(manifest_path, std::ios::binary);
    if (!mf) throw Error(ErrorKind::Validation, "cannot write '" + manifest_path.string() + "'");
    mf << out.manifest.dump(2) << '\n';
    out.files.push_back(manifest_path);
    return out;
}

} // namespace qsync::cli
