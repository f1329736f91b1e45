// qsync: sweeps, QFIM reports and invariant checks from the command line

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cli/model_source.hpp"
#include "cli/report.hpp"
#include "cli/sweep.hpp"
#include "cli/sweep_config.hpp"
#include "cli/verify.hpp"
#include "qsync/error.hpp"
#include "qsync/version.hpp"

namespace cli = qsync::cli;

int main(int argc, char** argv) {
    CLI::App app{"Quantum synchronization as dissipative quantum sensing"};
    app.set_version_flag("--version", std::string(qsync::kVersion));
    app.require_subcommand(1);

    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep described by a config file");
    std::string config_path;
    std::string output_override;
    unsigned threads = 0;
    sweep->add_option("--config", config_path, "Sweep configuration (JSON)")->required()->check(CLI::ExistingFile);
    sweep->add_option("--output", output_override, "Output directory (overrides output_path)");
    sweep->add_option("--threads", threads, "Worker threads (overrides the config)");

    auto* qfim = app.add_subcommand("qfim", "Print the QFIM, eigendrives and orthogonality measures");
    std::string model_target;
    std::vector<std::string> param_items;
    std::vector<std::string> drives;
    std::string json_path;
    qfim->add_option("--model", model_target, "Model file, builtin:vdp or builtin:tqo")->required();
    qfim->add_option("--params", param_items, "Parameter overrides name=value");
    qfim->add_option("--drives", drives, "Drive labels or one group name (all, all-x, single-particle-x)");
    qfim->add_option("--json", json_path, "Path of the JSON report (default: qfim_report.json)");

    auto* verify = app.add_subcommand("verify", "Run invariant checks against a model");
    std::vector<std::string> targets;
    std::vector<std::string> verify_params;
    verify->add_option("target", targets, "Model file, builtin:vdp or builtin:tqo (default: both builtins)");
    verify->add_option("--params", verify_params, "Parameter overrides name=value");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep) {
            cli::SweepConfig cfg = cli::load_sweep_config(config_path);
            if (!output_override.empty()) {
                cfg.output_path = output_override;
                cfg.echo["output_path"] = output_override;
            }
            if (threads > 0) {
                cfg.threads = threads;
                cfg.echo["threads"] = threads;
            }
            const cli::SweepOutcome out = cli::run_sweep(cfg);
            for (const auto& f : out.files) std::cout << "wrote " << f.string() << '\n';
            std::size_t failed = 0;
            for (const auto& p : out.points) failed += p.status != "ok";
            std::cout << out.points.size() << " points, " << failed << " with errors\n";
            return failed == 0 ? 0 : 2;
        }
        if (*qfim) {
            const auto source = cli::ModelSource::from_target(model_target);
            std::vector<std::string> labels = drives;
            if (labels.size() == 1 && (labels[0] == "all" || source.has_group(labels[0]))) {
                labels = source.resolve_drives(labels[0]);
            }
            const auto report = cli::qfim_report(source, cli::parse_param_assignments(param_items), labels);
            cli::print_report(std::cout, report);
            const std::string path = json_path.empty() ? "qfim_report.json" : json_path;
            std::ofstream out(path);
            if (!out) throw qsync::Error(qsync::ErrorKind::Validation, "cannot write '" + path + "'");
            out << cli::report_json(report).dump(2) << '\n';
            std::cout << "\nwrote " << path << '\n';
            return 0;
        }
        if (*verify) {
            if (targets.empty()) targets = {"builtin:vdp", "builtin:tqo"};
            const auto overrides = cli::parse_param_assignments(verify_params);
            bool ok = true;
            for (const auto& t : targets) {
                std::vector<cli::Check> checks;
                try {
                    checks = cli::run_checks(cli::ModelSource::from_target(t), overrides);
                } catch (const qsync::Error& e) {
                    checks.push_back(cli::Check{"load", 0.0, 0.0, false, e.what()});
                }
                cli::print_checks(std::cout, t, checks);
                ok = ok && cli::all_pass(checks);
            }
            return ok ? 0 : 1;
        }
    } catch (const qsync::Error& e) {
        std::cerr << "error [" << qsync::to_string(e.kind()) << "]: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
