#include "cli/sweep_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qsync/error.hpp"

namespace qsync::cli {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
    throw Error(ErrorKind::Parse, "config field '" + path + "': " + what);
}

double number_at(const json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) field_error(path + "." + key, "missing");
    if (!it->is_number()) field_error(path + "." + key, "expected a number");
    return it->get<double>();
}

} // namespace

std::vector<double> expand_grid(const json& spec, const std::string& path) {
    std::vector<double> grid;
    if (spec.is_array()) {
        for (std::size_t k = 0; k < spec.size(); ++k) {
            if (!spec[k].is_number()) field_error(path + "[" + std::to_string(k) + "]", "expected a number");
            grid.push_back(spec[k].get<double>());
        }
    } else if (spec.is_object()) {
        const double start = number_at(spec, "start", path);
        const double stop = number_at(spec, "stop", path);
        const auto count_it = spec.find("count");
        if (count_it == spec.end() || !count_it->is_number_integer() || count_it->get<long long>() <= 0) {
            field_error(path + ".count", "expected a positive integer");
        }
        const auto count = count_it->get<std::size_t>();
        std::string spacing = "linear";
        if (auto it = spec.find("spacing"); it != spec.end()) {
            if (!it->is_string()) field_error(path + ".spacing", "expected \"linear\" or \"log\"");
            spacing = it->get<std::string>();
        }
        if (spacing != "linear" && spacing != "log") field_error(path + ".spacing", "expected \"linear\" or \"log\"");
        if (spacing == "log" && !(start > 0.0 && stop > 0.0)) field_error(path, "log spacing needs positive bounds");
        for (std::size_t k = 0; k < count; ++k) {
            const double t = count == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(count - 1);
            if (spacing == "log") {
                grid.push_back(std::exp(std::log(start) + t * (std::log(stop) - std::log(start))));
            } else {
                grid.push_back(start + t * (stop - start));
            }
        }
        // Pin the endpoints exactly.
        grid.front() = start;
        grid.back() = stop;
    } else {
        field_error(path, "expected a list or {start, stop, count, spacing}");
    }
    if (grid.empty()) field_error(path, "grid is empty");
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (!(grid[k] > grid[k - 1])) field_error(path, "grid must be strictly increasing");
    }
    return grid;
}

SweepConfig parse_sweep_config(const std::string& text, const std::filesystem::path& base_dir) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, std::string("malformed config: ") + e.what());
    }
    if (!root.is_object()) field_error("<root>", "expected an object");

    SweepConfig cfg;
    auto str = [&](const char* key, bool required) -> std::string {
        auto it = root.find(key);
        if (it == root.end()) {
            if (required) field_error(key, "missing");
            return {};
        }
        if (!it->is_string()) field_error(key, "expected a string");
        return it->get<std::string>();
    };

    cfg.model = str("model", true);
    if (cfg.model != "vdp" && cfg.model != "tqo" && cfg.model != "custom-file") {
        field_error("model", "expected vdp, tqo or custom-file");
    }
    if (cfg.model == "custom-file") {
        cfg.model_file = str("model_file", true);
        if (cfg.model_file.is_relative() && !base_dir.empty()) cfg.model_file = base_dir / cfg.model_file;
    }

    if (auto it = root.find("params"); it != root.end()) {
        if (!it->is_object()) field_error("params", "expected an object");
        for (const auto& [k, v] : it->items()) {
            if (!v.is_number()) field_error("params." + k, "expected a number");
            cfg.params[k] = v.get<double>();
        }
    }

    cfg.sweep_parameter = str("sweep_parameter", true);
    if (!root.contains("grid")) field_error("grid", "missing");
    cfg.grid = expand_grid(root["grid"]);

    const json& drives = root.contains("drives") ? root["drives"] : json("all");
    if (drives.is_string()) {
        cfg.drive_selector = drives.get<std::string>();
    } else if (drives.is_array() && !drives.empty()) {
        for (const auto& d : drives) {
            if (!d.is_string()) field_error("drives", "expected drive labels");
            cfg.drives.push_back(d.get<std::string>());
        }
    } else {
        field_error("drives", "expected a selector string or a nonempty label list");
    }

    if (!root.contains("outputs") || !root["outputs"].is_array()) field_error("outputs", "expected a list of measures");
    for (const auto& o : root["outputs"]) {
        if (!o.is_string()) field_error("outputs", "expected measure names");
        const auto name = o.get<std::string>();
        if (std::find(kKnownMeasures.begin(), kKnownMeasures.end(), name) == kKnownMeasures.end()) {
            field_error("outputs", "unknown measure '" + name + "'");
        }
        if (std::find(cfg.outputs.begin(), cfg.outputs.end(), name) == cfg.outputs.end()) cfg.outputs.push_back(name);
    }
    if (cfg.outputs.empty()) field_error("outputs", "at least one measure is required");

    cfg.output_path = str("output_path", false);
    if (cfg.output_path.empty()) cfg.output_path = "out";
    if (cfg.output_path.is_relative() && !base_dir.empty()) cfg.output_path = base_dir / cfg.output_path;

    if (auto it = root.find("tolerances"); it != root.end()) {
        if (!it->is_object()) field_error("tolerances", "expected an object");
        for (const auto& [k, v] : it->items()) {
            if (!v.is_number()) field_error("tolerances." + k, "expected a number");
            const double x = v.get<double>();
            if (!(x > 0.0)) field_error("tolerances." + k, "must be positive");
            if (k == "uniqueness_gap") cfg.tolerances.uniqueness_gap = x;
            else if (k == "zero_cutoff") cfg.tolerances.zero_cutoff = x;
            else if (k == "omega_eps") cfg.tolerances.omega_eps = x;
            else field_error("tolerances." + k, "unknown tolerance");
        }
    }

    if (auto it = root.find("threads"); it != root.end()) {
        if (!it->is_number_unsigned() || it->get<unsigned>() == 0) field_error("threads", "expected a positive integer");
        cfg.threads = it->get<unsigned>();
    }

    cfg.echo = {
        {"model", cfg.model},
        {"params", cfg.params},
        {"sweep_parameter", cfg.sweep_parameter},
        {"grid", cfg.grid},
        {"outputs", cfg.outputs},
        {"output_path", cfg.output_path.string()},
        {"tolerances",
         {{"uniqueness_gap", cfg.tolerances.uniqueness_gap},
          {"zero_cutoff", cfg.tolerances.zero_cutoff},
          {"omega_eps", cfg.tolerances.omega_eps}}},
        {"threads", cfg.threads},
    };
    if (!cfg.model_file.empty()) cfg.echo["model_file"] = cfg.model_file.string();
    if (cfg.drives.empty()) {
        cfg.echo["drives"] = cfg.drive_selector;
    } else {
        cfg.echo["drives"] = cfg.drives;
    }
    return cfg;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Parse, "cannot open config '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_sweep_config(buf.str(), path.parent_path());
    } catch (const Error& e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

ModelSource make_source(const SweepConfig& cfg) {
    if (cfg.model == "vdp") return ModelSource::builtin(ModelSource::Kind::Vdp);
    if (cfg.model == "tqo") return ModelSource::builtin(ModelSource::Kind::Tqo);
    return ModelSource::from_file(cfg.model_file);
}

} // namespace qsync::cli
