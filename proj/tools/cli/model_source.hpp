// model_source.hpp: builtin and file-defined models, instantiated per parameter set

#pragma once

#include <complex>
#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qsync/models.hpp"

namespace qsync::cli {

using ParamMap = std::map<std::string, double>;

// A coefficient in a model file: a literal or the name of a parameter.
struct Coefficient {
    std::variant<cplx, std::string> value;
    cplx resolve(const ParamMap& params) const;
};

struct TermSpec {
    Coefficient coefficient;
    Matrix matrix;
};

struct LabeledMatrix {
    std::string label;
    Matrix matrix;
};

struct CustomModel {
    std::string name = "custom";
    std::size_t hdim = 0;
    ParamMap params;
    std::variant<double, std::string> reference_rate = 1.0;
    std::vector<TermSpec> hamiltonian;
    std::vector<TermSpec> gain_jumps;     // jump = sqrt(rate) * matrix
    std::vector<TermSpec> damping_jumps;
    Matrix symmetry_generator;
    std::vector<LabeledMatrix> drives;
    std::map<std::string, std::vector<std::string>> drive_groups;
    std::vector<LabeledMatrix> observables;
};

// Parse errors carry line/column or the offending field path.
CustomModel parse_custom_model(const std::string& text);
CustomModel load_custom_model(const std::filesystem::path& path);

struct BuiltModel {
    ModelSpec spec;
    std::size_t n_trunc = 0;
    std::size_t growth_steps = 0;
    double tail = 0.0;
};

class ModelSource {
public:
    enum class Kind { Vdp, Tqo, Custom };

    static ModelSource builtin(Kind kind);
    static ModelSource from_file(const std::filesystem::path& path);
    // "builtin:vdp", "builtin:tqo", "vdp", "tqo" or a file path.
    static ModelSource from_target(const std::string& target);

    Kind kind() const noexcept { return kind_; }
    std::string name() const;
    const std::filesystem::path& file() const noexcept { return file_; }

    // Defaults merged with overrides; unknown names are rejected.
    ParamMap parameters(const ParamMap& overrides = {}) const;
    std::vector<std::string> parameter_names() const;

    BuiltModel build(const ParamMap& params) const;

    std::vector<std::string> drive_labels() const;
    std::vector<std::string> observable_labels() const;
    // "all", a named group ("all-x", "single-particle-x", ...) or nothing.
    std::vector<std::string> resolve_drives(const std::string& selector) const;
    bool has_group(const std::string& group) const;

private:
    Kind kind_ = Kind::Vdp;
    std::filesystem::path file_;
    CustomModel custom_;
};

ParamMap parse_param_assignments(const std::vector<std::string>& items);

} // namespace qsync::cli
