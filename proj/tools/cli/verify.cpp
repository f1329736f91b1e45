#include "cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qsync/analysis.hpp"
#include "qsync/error.hpp"
#include "qsync/measures.hpp"

namespace qsync::cli {

namespace {

Check at_most(std::string name, double measured, double tol, std::string detail = {}) {
    return Check{std::move(name), measured, tol, measured <= tol, std::move(detail)};
}

void tqo_checks(const ModelSpec& spec, const ParamMap& p, const Analysis& a, std::vector<Check>& out) {
    const double G = p.at("Gamma");
    const double w1 = p.at("w1"), g1 = p.at("gamma1"), w2 = p.at("w2"), g2 = p.at("gamma2");
    if (std::abs(w1 + g1 - G) > 1e-12 * G || std::abs(w2 + g2 - G) > 1e-12 * G) {
        out.push_back(Check{"analytic references", 0.0, 0.0, true, "skipped: requires w_j + gamma_j = Gamma"});
        return;
    }
    const double gbar = p.at("g") / G;
    const double d1 = (w1 - g1) / G;
    const double d2 = (w2 - g2) / G;
    const TqoExpectations x = tqo_expectations(a.rho0());
    const TqoExpectations xa = tqo_analytic_steady(gbar, d1, d2);
    const double dx = std::max({std::abs(x.x1 - xa.x1), std::abs(x.x2 - xa.x2), std::abs(x.x3 - xa.x3),
                                std::abs(x.x4 - xa.x4)});
    out.push_back(at_most("analytic steady state (x1..x4)", dx, 1e-10));

    const std::size_t sx1 = spec.drives.index_of("sx1");
    const ResponseMatrix r = a.solver.response(spec.drive_liouvillian(sx1), "sx1");
    const TqoResponse y = tqo_response_expectations(r);
    const TqoResponse ya = tqo_analytic_response(gbar, d1, d2, G);
    double dy = 0.0;
    for (std::size_t k = 0; k < 4; ++k) dy = std::max(dy, std::abs(y[k] - ya[k]));
    out.push_back(at_most("analytic response (sx1)", dy, 1e-8));

    double re = 0.0;
    for (const auto& label : {"sx1", "sx2", "sz2sx1", "sz1sx2"}) {
        const auto k = spec.drives.index_of(label);
        const ResponseMatrix rk = to_eigenbasis(a.solver.response(spec.drive_liouvillian(k), label), a.labeled);
        re = std::max(re, rk.op.matrix().real().cwiseAbs().maxCoeff());
    }
    out.push_back(at_most("x responses purely imaginary", re, 1e-10));

    if (a.qfim.size() == 8) {
        const RealMatrix& F = a.qfim.matrix;
        const double scale = std::max(1.0, F.cwiseAbs().maxCoeff());
        const double off = F.topRightCorner(4, 4).cwiseAbs().maxCoeff() / scale;
        const double diff = (F.topLeftCorner(4, 4) - F.bottomRightCorner(4, 4)).cwiseAbs().maxCoeff() / scale;
        out.push_back(at_most("QFIM x-y off-block", off, 1e-10));
        out.push_back(at_most("QFIM x block = y block", diff, 1e-10));
    }
}

void vdp_checks(const ModelSource& source, const ParamMap& p, const Analysis& a, std::size_t n_trunc,
                std::vector<Check>& out) {
    ParamMap bigger = p;
    bigger["n_trunc"] = std::ceil(1.25 * static_cast<double>(n_trunc));
    const BuiltModel b = source.build(bigger);
    const Analysis a2 = analyze(b.spec, {"x"});
    const double F = a.qfim.matrix(0, 0);
    const double F2 = a2.qfim.matrix(0, 0);
    char detail[96];
    std::snprintf(detail, sizeof detail, "n = %zu -> %zu", n_trunc, b.n_trunc);
    out.push_back(at_most("truncation stability (+25% levels)", std::abs(F2 - F) / F, 1e-3, detail));
}

} // namespace

std::vector<Check> run_checks(const ModelSource& source, const ParamMap& overrides) {
    std::vector<Check> out;
    ParamMap params;
    BuiltModel built;
    try {
        params = source.parameters(overrides);
        built = source.build(params);
    } catch (const Error& e) {
        out.push_back(Check{"model construction", 0.0, 0.0, false, e.what()});
        return out;
    }
    const ModelSpec& spec = built.spec;
    out.push_back(Check{"model construction", 0.0, 0.0, true, spec.name + ", hdim " + std::to_string(spec.hdim)});

    try {
        const Liouvillian L0 = spec.liouvillian();
        out.push_back(at_most("U(1) symmetry violation",
                              u1_violation(L0, assign_charges(spec.symmetry_generator, spec.hdim)), 1e-10));
        out.push_back(at_most("trace preservation defect", L0.trace_preservation_defect(), 1e-12));

        const Analysis a = analyze(spec);
        out.push_back(at_most("steady-state residual / ||L||", a.solver.steady_residual() / a.solver.spectral_norm(),
                              1e-10));

        QfiOptions full;
        full.symmetry_breaking_only = false;
        const double r2 = spec.reference_rate * spec.reference_rate;
        for (std::size_t m = 0; m < spec.drives.size(); ++m) {
            const std::string& label = spec.drives.labels()[m];
            const double Fn = a.qfim.matrix(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
            const double Fq = qfi(a.labeled, a.responses[m]);
            out.push_back(at_most("QFIM diagonal = qfi [" + label + "]", std::abs(Fn - Fq) / std::max(Fq, 1e-300),
                                  1e-12));
            const double F = qfi(a.labeled, a.responses[m], full);
            const double oracle = qfi_fidelity_oracle(a.L0, a.drive_liouvillians[m], 1e-4);
            const double rel = F > 0.0 ? std::abs(oracle - F) / F : std::abs(oracle) * r2;
            char detail[96];
            std::snprintf(detail, sizeof detail, "F = %.6e, oracle = %.6e", F * r2, oracle * r2);
            out.push_back(at_most("fidelity oracle, eps=1e-4 [" + label + "]", rel, 1e-3, detail));
            for (const auto& o : spec.observables) {
                const double mu = method_of_moments_mu(a.rho0(), a.responses[m], o.op);
                const double excess = F > 0.0 ? mu / F - 1.0 : mu * r2;
                out.push_back(at_most("Cramer-Rao mu <= F [" + label + ", " + o.label + "]", excess, 1e-9));
            }
        }
        double worst = 0.0;
        std::string status = "ok";
        for (std::size_t m = 0; m < spec.drives.size(); ++m) {
            try {
                const double D = orthogonality(a.qfim, m);
                worst = std::max({worst, -D, D - 1.0});
            } catch (const Error& e) {
                status = to_string(e.kind());
                break;
            }
        }
        if (status == "ok") {
            out.push_back(at_most("D_m within [0, 1]", worst, 1e-10));
        } else {
            out.push_back(Check{"D_m within [0, 1]", 0.0, 0.0, true, "skipped: " + status});
        }

        if (source.kind() == ModelSource::Kind::Tqo) tqo_checks(spec, params, a, out);
        if (source.kind() == ModelSource::Kind::Vdp) vdp_checks(source, params, a, built.n_trunc, out);
    } catch (const Error& e) {
        out.push_back(Check{"pipeline", 0.0, 0.0, false, std::string(to_string(e.kind())) + ": " + e.what()});
    }
    return out;
}

bool all_pass(const std::vector<Check>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void print_checks(std::ostream& out, const std::string& target, const std::vector<Check>& checks) {
    char buf[256];
    out << "verify " << target << '\n';
    std::snprintf(buf, sizeof buf, "%-48s %12s %12s  %s\n", "check", "measured", "tolerance", "result");
    out << buf;
    for (const auto& c : checks) {
        std::snprintf(buf, sizeof buf, "%-48s %12.3e %12.3e  %s", c.name.c_str(), c.measured, c.tolerance,
                      c.pass ? "PASS" : "FAIL");
        out << buf;
        if (!c.detail.empty()) out << "  (" << c.detail << ")";
        out << '\n';
    }
    out << (all_pass(checks) ? "all checks passed" : "some checks FAILED") << '\n';
}

} // namespace qsync::cli
