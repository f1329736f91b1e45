#include "cli/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qsync/error.hpp"
#include "qsync/measures.hpp"

namespace qsync::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> single_particle_subset(const EvalContext& ctx) {
    if (!ctx.source->has_group("single-particle-x")) return {};
    const auto sp = ctx.source->resolve_drives("single-particle-x");
    for (const auto& l : sp) {
        if (std::find(ctx.drives.begin(), ctx.drives.end(), l) == ctx.drives.end()) return {};
    }
    return sp.size() < ctx.drives.size() ? sp : std::vector<std::string>{};
}

std::vector<std::size_t> indices_of(const std::vector<std::string>& all, const std::vector<std::string>& pick) {
    std::vector<std::size_t> out;
    for (const auto& p : pick) {
        out.push_back(static_cast<std::size_t>(std::find(all.begin(), all.end(), p) - all.begin()));
    }
    return out;
}

template <class F>
MeasureRow guarded(std::size_t width, F&& fill) {
    MeasureRow row;
    try {
        fill(row.values);
    } catch (const Error& e) {
        row.values.assign(width, kNaN);
        row.status = to_string(e.kind());
        row.message = e.what();
    }
    return row;
}

} // namespace

AnalysisOptions analysis_options(const Tolerances& tol) {
    AnalysisOptions opts;
    opts.stationary.uniqueness_gap = tol.uniqueness_gap;
    opts.zero_cutoff = tol.zero_cutoff;
    return opts;
}

std::vector<MeasureLayout> measure_layouts(const EvalContext& ctx) {
    std::vector<MeasureLayout> out;
    const auto& d = ctx.drives;
    for (const auto& m : ctx.outputs) {
        MeasureLayout layout{m, {}};
        auto& c = layout.columns;
        if (m == "qfi") {
            for (const auto& l : d) c.push_back("F_" + l);
            c.push_back("F_max");
            if (!single_particle_subset(ctx).empty()) c.push_back("F_max_single");
        } else if (m == "qfim") {
            for (std::size_t a = 0; a < d.size(); ++a) {
                for (std::size_t b = a; b < d.size(); ++b) c.push_back("F_" + d[a] + "_" + d[b]);
            }
        } else if (m == "omega_tilde") {
            for (const auto& l : d) c.push_back("Omega_" + l);
        } else if (m == "mu") {
            for (const auto& l : d) {
                for (const auto& o : ctx.source->observable_labels()) c.push_back("mu_" + l + "_" + o);
            }
        } else if (m == "D") {
            for (const auto& l : d) c.push_back("D_" + l);
        } else if (m == "eigendrives") {
            for (std::size_t k = 0; k < d.size(); ++k) c.push_back("lambda_" + std::to_string(k));
            for (const auto& l : d) c.push_back("n_" + l);
            c.push_back("top_degenerate");
        }
        out.push_back(std::move(layout));
    }
    return out;
}

PointResult evaluate_point(const EvalContext& ctx, double value) {
    PointResult res;
    res.value = value;
    const auto layouts = measure_layouts(ctx);
    try {
        ParamMap overrides = ctx.base_params;
        overrides[ctx.sweep_parameter] = value;
        const BuiltModel built = ctx.source->build(ctx.source->parameters(overrides));
        const ModelSpec& spec = built.spec;
        res.hdim = spec.hdim;
        res.n_trunc = built.n_trunc;
        res.growth_steps = built.growth_steps;
        res.tail = built.tail;
        res.reference_rate = spec.reference_rate;
        const double r2 = spec.reference_rate * spec.reference_rate;

        const AnalysisOptions opts = analysis_options(ctx.tolerances);
        const Analysis a = analyze(spec, ctx.drives, opts);
        const std::size_t m = ctx.drives.size();

        for (const auto& layout : layouts) {
            const std::size_t width = layout.columns.size();
            MeasureRow row;
            if (layout.measure == "qfi") {
                row = guarded(width, [&](std::vector<double>& v) {
                    for (std::size_t k = 0; k < m; ++k) {
                        v.push_back(r2 * a.qfim.matrix(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)));
                    }
                    v.push_back(r2 * optimal_drive(a.qfim).eigenvalues(0));
                    if (const auto sp = single_particle_subset(ctx); !sp.empty()) {
                        const auto idx = indices_of(ctx.drives, sp);
                        v.push_back(r2 * optimal_drive(a.qfim.submatrix(idx)).eigenvalues(0));
                    }
                });
            } else if (layout.measure == "qfim") {
                row = guarded(width, [&](std::vector<double>& v) {
                    for (std::size_t i = 0; i < m; ++i) {
                        for (std::size_t j = i; j < m; ++j) {
                            v.push_back(r2 * a.qfim.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
                        }
                    }
                });
            } else if (layout.measure == "omega_tilde") {
                res.omega_method = ctx.source->kind() == ModelSource::Kind::Vdp ? "perturbative" : "direct";
                row = guarded(width, [&](std::vector<double>& v) {
                    for (std::size_t k = 0; k < m; ++k) {
                        double om = 0.0;
                        if (res.omega_method == "perturbative") {
                            om = omega_tilde_perturbative(ladder_coefficients(a.rho0(), a.responses[k]));
                        } else {
                            OmegaTildeOptions oo;
                            oo.eps = ctx.tolerances.omega_eps;
                            oo.stationary = opts.stationary;
                            om = omega_tilde_direct_checked(a.L0, a.drive_liouvillians[k], a.decomp, oo).omega_tilde;
                        }
                        v.push_back(r2 * om);
                    }
                });
            } else if (layout.measure == "mu") {
                row = guarded(width, [&](std::vector<double>& v) {
                    for (std::size_t k = 0; k < m; ++k) {
                        for (const auto& o : spec.observables) {
                            v.push_back(r2 * method_of_moments_mu(a.rho0(), a.responses[k], o.op));
                        }
                    }
                });
            } else if (layout.measure == "D") {
                row = guarded(width, [&](std::vector<double>& v) {
                    for (std::size_t k = 0; k < m; ++k) v.push_back(orthogonality(a.qfim, k));
                });
            } else if (layout.measure == "eigendrives") {
                row = guarded(width, [&](std::vector<double>& v) {
                    const EigendriveResult e = optimal_drive(a.qfim);
                    for (Eigen::Index k = 0; k < e.eigenvalues.size(); ++k) v.push_back(r2 * e.eigenvalues(k));
                    for (Eigen::Index k = 0; k < e.n_opt.size(); ++k) v.push_back(e.n_opt(k));
                    v.push_back(e.top_degenerate ? 1.0 : 0.0);
                    res.top_degenerate = e.top_degenerate;
                });
            }
            if (row.status == "ok" && row.values.size() != width) {
                throw Error(ErrorKind::NumericalFailure, "measure '" + layout.measure + "' produced a short row");
            }
            if (row.status != "ok" && res.status == "ok") {
                res.status = row.status;
                res.message = layout.measure + ": " + row.message;
            }
            res.rows[layout.measure] = std::move(row);
        }
    } catch (const Error& e) {
        res.status = to_string(e.kind());
        res.message = e.what();
        for (const auto& layout : layouts) {
            MeasureRow row;
            row.values.assign(layout.columns.size(), kNaN);
            row.status = res.status;
            row.message = res.message;
            res.rows[layout.measure] = std::move(row);
        }
    }
    return res;
}

} // namespace qsync::cli
