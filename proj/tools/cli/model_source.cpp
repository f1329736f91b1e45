#include "cli/model_source.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qsync/error.hpp"

namespace qsync::cli {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
    throw Error(ErrorKind::Parse, "field '" + path + "': " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) field_error(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) field_error(path.empty() ? key : path + "." + key, "missing");
    return *it;
}

double read_real(const json& j, const std::string& path) {
    if (!j.is_number()) field_error(path, "expected a number");
    return j.get<double>();
}

cplx read_complex(const json& j, const std::string& path) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        field_error(path, "expected a [re, im] pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Matrix read_matrix(const json& j, std::size_t hdim, const std::string& path) {
    if (!j.is_array() || j.size() != hdim) {
        field_error(path, "expected " + std::to_string(hdim) + " rows");
    }
    const auto d = static_cast<Eigen::Index>(hdim);
    Matrix m(d, d);
    for (std::size_t r = 0; r < hdim; ++r) {
        const std::string rpath = path + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || j[r].size() != hdim) {
            field_error(rpath, "expected " + std::to_string(hdim) + " entries");
        }
        for (std::size_t c = 0; c < hdim; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                read_complex(j[r][c], rpath + "[" + std::to_string(c) + "]");
        }
    }
    return m;
}

Coefficient read_coefficient(const json& j, const std::string& path) {
    if (j.is_string()) return Coefficient{j.get<std::string>()};
    return Coefficient{read_complex(j, path)};
}

std::vector<TermSpec> read_terms(const json& root, const std::string& key, const std::string& coeff_key,
                                 std::size_t hdim) {
    std::vector<TermSpec> out;
    auto it = root.find(key);
    if (it == root.end()) return out;
    if (!it->is_array()) field_error(key, "expected an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
        const std::string path = key + "[" + std::to_string(k) + "]";
        const json& t = (*it)[k];
        out.push_back(TermSpec{read_coefficient(require(t, coeff_key, path), path + "." + coeff_key),
                               read_matrix(require(t, "matrix", path), hdim, path + ".matrix")});
    }
    return out;
}

std::vector<LabeledMatrix> read_labeled(const json& root, const std::string& key, std::size_t hdim,
                                        bool required) {
    std::vector<LabeledMatrix> out;
    auto it = root.find(key);
    if (it == root.end()) {
        if (required) field_error(key, "missing");
        return out;
    }
    if (!it->is_array()) field_error(key, "expected an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
        const std::string path = key + "[" + std::to_string(k) + "]";
        const json& t = (*it)[k];
        const json& label = require(t, "label", path);
        if (!label.is_string()) field_error(path + ".label", "expected a string");
        out.push_back(LabeledMatrix{label.get<std::string>(),
                                    read_matrix(require(t, "matrix", path), hdim, path + ".matrix")});
    }
    return out;
}

std::string line_context(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

double lookup(const ParamMap& params, const std::string& name) {
    auto it = params.find(name);
    if (it == params.end()) throw Error(ErrorKind::Validation, "unknown parameter '" + name + "'");
    return it->second;
}

const std::vector<std::string> kVdpParams = {"kappa1", "kappa2", "kappa_ratio", "n_trunc", "tail_tol",
                                             "truncation_cap"};
const std::vector<std::string> kTqoParams = {"g", "Gamma", "w1", "gamma1", "w2", "gamma2"};

} // namespace

cplx Coefficient::resolve(const ParamMap& params) const {
    if (const auto* c = std::get_if<cplx>(&value)) return *c;
    return {lookup(params, std::get<std::string>(value)), 0.0};
}

CustomModel parse_custom_model(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, "malformed model file at " + line_context(text, e.byte) + ": " + e.what());
    }
    if (!root.is_object()) field_error("<root>", "expected an object");

    CustomModel m;
    if (auto it = root.find("name"); it != root.end()) {
        if (!it->is_string()) field_error("name", "expected a string");
        m.name = it->get<std::string>();
    }
    const json& hdim = require(root, "hdim", "");
    if (!hdim.is_number_unsigned() || hdim.get<std::size_t>() == 0) field_error("hdim", "expected a positive integer");
    m.hdim = hdim.get<std::size_t>();

    if (auto it = root.find("params"); it != root.end()) {
        if (!it->is_object()) field_error("params", "expected an object");
        for (const auto& [k, v] : it->items()) m.params[k] = read_real(v, "params." + k);
    }
    if (auto it = root.find("reference_rate"); it != root.end()) {
        if (it->is_string()) {
            const auto name = it->get<std::string>();
            if (!m.params.count(name)) field_error("reference_rate", "unknown parameter '" + name + "'");
            m.reference_rate = name;
        } else {
            m.reference_rate = read_real(*it, "reference_rate");
        }
    }

    m.hamiltonian = read_terms(root, "hamiltonian", "coefficient", m.hdim);
    m.gain_jumps = read_terms(root, "gain_jumps", "rate", m.hdim);
    m.damping_jumps = read_terms(root, "damping_jumps", "rate", m.hdim);
    m.symmetry_generator = read_matrix(require(root, "symmetry_generator", ""), m.hdim, "symmetry_generator");
    m.drives = read_labeled(root, "drives", m.hdim, true);
    if (m.drives.empty()) field_error("drives", "at least one drive is required");
    m.observables = read_labeled(root, "observables", m.hdim, false);

    std::set<std::string> drive_names;
    for (const auto& d : m.drives) drive_names.insert(d.label);
    if (auto it = root.find("drive_groups"); it != root.end()) {
        if (!it->is_object()) field_error("drive_groups", "expected an object");
        for (const auto& [k, v] : it->items()) {
            const std::string path = "drive_groups." + k;
            if (!v.is_array()) field_error(path, "expected an array of drive labels");
            std::vector<std::string> labels;
            for (const auto& l : v) {
                if (!l.is_string() || !drive_names.count(l.get<std::string>())) {
                    field_error(path, "unknown drive label " + l.dump());
                }
                labels.push_back(l.get<std::string>());
            }
            m.drive_groups[k] = labels;
        }
    }

    for (const auto& terms : {&m.hamiltonian, &m.gain_jumps, &m.damping_jumps}) {
        for (const auto& t : *terms) {
            if (const auto* name = std::get_if<std::string>(&t.coefficient.value); name && !m.params.count(*name)) {
                field_error("params", "coefficient refers to undeclared parameter '" + *name + "'");
            }
        }
    }
    return m;
}

CustomModel load_custom_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Parse, "cannot open model file '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_custom_model(buf.str());
    } catch (const Error& e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

ModelSource ModelSource::builtin(Kind kind) {
    ModelSource s;
    s.kind_ = kind;
    return s;
}

ModelSource ModelSource::from_file(const std::filesystem::path& path) {
    ModelSource s;
    s.kind_ = Kind::Custom;
    s.file_ = path;
    s.custom_ = load_custom_model(path);
    return s;
}

ModelSource ModelSource::from_target(const std::string& target) {
    if (target == "builtin:vdp" || target == "vdp") return builtin(Kind::Vdp);
    if (target == "builtin:tqo" || target == "tqo") return builtin(Kind::Tqo);
    if (target.rfind("builtin:", 0) == 0) throw Error(ErrorKind::Validation, "unknown builtin model '" + target + "'");
    return from_file(target);
}

std::string ModelSource::name() const {
    switch (kind_) {
        case Kind::Vdp: return "vdp";
        case Kind::Tqo: return "tqo";
        case Kind::Custom: return custom_.name;
    }
    return {};
}

std::vector<std::string> ModelSource::parameter_names() const {
    switch (kind_) {
        case Kind::Vdp: return kVdpParams;
        case Kind::Tqo: return kTqoParams;
        case Kind::Custom: break;
    }
    std::vector<std::string> out;
    for (const auto& [k, v] : custom_.params) out.push_back(k);
    return out;
}

ParamMap ModelSource::parameters(const ParamMap& overrides) const {
    const auto names = parameter_names();
    for (const auto& [k, v] : overrides) {
        if (std::find(names.begin(), names.end(), k) == names.end()) {
            throw Error(ErrorKind::Validation, "model '" + name() + "' has no parameter '" + k + "'");
        }
    }
    auto get = [&](const std::string& k, double fallback) {
        auto it = overrides.find(k);
        return it == overrides.end() ? fallback : it->second;
    };
    ParamMap p;
    switch (kind_) {
        case Kind::Vdp: {
            p["kappa1"] = get("kappa1", 1.0);
            p["kappa2"] = overrides.count("kappa_ratio") ? p["kappa1"] / overrides.at("kappa_ratio")
                                                         : get("kappa2", 1.0);
            p["kappa_ratio"] = p["kappa1"] / p["kappa2"];
            p["n_trunc"] = get("n_trunc", 0.0);
            p["tail_tol"] = get("tail_tol", 1e-8);
            p["truncation_cap"] = get("truncation_cap", 200.0);
            break;
        }
        case Kind::Tqo: {
            const double G = get("Gamma", 1.0);
            p["g"] = get("g", G);
            p["Gamma"] = G;
            p["w1"] = get("w1", 0.0);
            p["gamma1"] = get("gamma1", G);
            p["w2"] = get("w2", G);
            p["gamma2"] = get("gamma2", 0.0);
            break;
        }
        case Kind::Custom:
            p = custom_.params;
            for (const auto& [k, v] : overrides) p[k] = v;
            break;
    }
    return p;
}

BuiltModel ModelSource::build(const ParamMap& params) const {
    BuiltModel out;
    switch (kind_) {
        case Kind::Vdp: {
            const double k1 = lookup(params, "kappa1");
            const double k2 = lookup(params, "kappa2");
            const double requested = lookup(params, "n_trunc");
            if (requested > 0.0) {
                out.n_trunc = static_cast<std::size_t>(std::llround(requested));
            } else {
                const auto t = vdp_auto_truncation_detailed(
                    k1, k2, lookup(params, "tail_tol"),
                    static_cast<std::size_t>(std::llround(lookup(params, "truncation_cap"))));
                out.n_trunc = t.n_trunc;
                out.growth_steps = t.growth_steps;
                out.tail = t.tail;
            }
            out.spec = vdp_model(k1, k2, out.n_trunc);
            break;
        }
        case Kind::Tqo:
            out.spec = tqo_model(lookup(params, "g"), lookup(params, "Gamma"), lookup(params, "w1"),
                                 lookup(params, "gamma1"), lookup(params, "w2"), lookup(params, "gamma2"));
            out.n_trunc = 4;
            break;
        case Kind::Custom: {
            const CustomModel& c = custom_;
            ModelSpec& s = out.spec;
            s.name = c.name;
            s.hdim = c.hdim;
            Matrix H = Matrix::Zero(static_cast<Eigen::Index>(c.hdim), static_cast<Eigen::Index>(c.hdim));
            for (const auto& t : c.hamiltonian) H += t.coefficient.resolve(params) * t.matrix;
            s.H0 = Operator(H);
            auto jumps = [&](const std::vector<TermSpec>& terms) {
                std::vector<Operator> ops;
                for (const auto& t : terms) {
                    const cplx rate = t.coefficient.resolve(params);
                    if (rate.imag() != 0.0 || rate.real() < 0.0) {
                        throw Error(ErrorKind::Validation, "jump rates must be real and nonnegative");
                    }
                    if (rate.real() > 0.0) ops.emplace_back(Matrix(std::sqrt(rate.real()) * t.matrix));
                }
                return ops;
            };
            s.gain_jumps = jumps(c.gain_jumps);
            s.damping_jumps = jumps(c.damping_jumps);
            s.symmetry_generator = Operator(c.symmetry_generator);
            std::vector<Operator> gens;
            std::vector<std::string> labels;
            for (const auto& d : c.drives) {
                gens.emplace_back(d.matrix);
                labels.push_back(d.label);
            }
            s.drives = DriveSet(std::move(gens), std::move(labels));
            for (const auto& o : c.observables) s.observables.push_back({o.label, Operator(o.matrix)});
            s.params = params;
            if (const auto* name = std::get_if<std::string>(&c.reference_rate)) {
                s.reference_rate_name = *name;
                s.reference_rate = lookup(params, *name);
            } else {
                s.reference_rate_name = "unit";
                s.reference_rate = std::get<double>(c.reference_rate);
            }
            out.n_trunc = c.hdim;
            break;
        }
    }
    out.spec.validate();
    return out;
}

std::vector<std::string> ModelSource::drive_labels() const {
    switch (kind_) {
        case Kind::Vdp: return {"x"};
        case Kind::Tqo: return {"sx1", "sx2", "sz2sx1", "sz1sx2", "sy1", "sy2", "sz2sy1", "sz1sy2"};
        case Kind::Custom: break;
    }
    std::vector<std::string> out;
    for (const auto& d : custom_.drives) out.push_back(d.label);
    return out;
}

std::vector<std::string> ModelSource::observable_labels() const {
    switch (kind_) {
        case Kind::Vdp: return {"p", "sigma_y"};
        case Kind::Tqo: return {"sy1", "sy2"};
        case Kind::Custom: break;
    }
    std::vector<std::string> out;
    for (const auto& o : custom_.observables) out.push_back(o.label);
    return out;
}

bool ModelSource::has_group(const std::string& group) const {
    if (kind_ == Kind::Custom) return custom_.drive_groups.count(group) > 0;
    return group == "all-x" || group == "single-particle-x";
}

std::vector<std::string> ModelSource::resolve_drives(const std::string& selector) const {
    if (selector.empty() || selector == "all") return drive_labels();
    switch (kind_) {
        case Kind::Vdp:
            if (selector == "all-x" || selector == "single-particle-x") return {"x"};
            break;
        case Kind::Tqo:
            if (selector == "all-x") return {"sx1", "sx2", "sz2sx1", "sz1sx2"};
            if (selector == "single-particle-x") return {"sx1", "sx2"};
            break;
        case Kind::Custom:
            if (auto it = custom_.drive_groups.find(selector); it != custom_.drive_groups.end()) return it->second;
            break;
    }
    throw Error(ErrorKind::Validation, "model '" + name() + "' has no drive group '" + selector + "'");
}

ParamMap parse_param_assignments(const std::vector<std::string>& items) {
    ParamMap out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw Error(ErrorKind::Parse, "parameter '" + item + "' is not of the form name=value");
        }
        const std::string value = item.substr(eq + 1);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != value.size()) {
            throw Error(ErrorKind::Parse, "parameter '" + item + "' has a non-numeric value");
        }
        out[item.substr(0, eq)] = v;
    }
    return out;
}

} // namespace qsync::cli
