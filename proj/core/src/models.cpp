#include "qsync/models.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "qsync/error.hpp"
#include "qsync/symmetry.hpp"

namespace qsync {

DriveSet::DriveSet(std::vector<Operator> generators, std::vector<std::string> labels)
    : generators_(std::move(generators)), labels_(std::move(labels)) {
    if (generators_.size() != labels_.size()) {
        throw Error(ErrorKind::Validation, "drive set: one label per generator required");
    }
    if (std::set<std::string>(labels_.begin(), labels_.end()).size() != labels_.size()) {
        throw Error(ErrorKind::Validation, "drive set: labels must be unique");
    }
    for (std::size_t m = 0; m < generators_.size(); ++m) {
        const auto& h = generators_[m];
        if (h.dim() != generators_.front().dim()) {
            throw Error(ErrorKind::Dimension, "drive set: generators differ in dimension");
        }
        if (!h.is_hermitian(kTol)) {
            throw Error(ErrorKind::Validation, "drive '" + labels_[m] + "' is not Hermitian");
        }
        norms_.push_back(h.frobenius_norm());
    }
    if (norms_.empty()) return;
    const double ref = norms_.front();
    const double scale = std::max(1.0, ref * ref);
    for (std::size_t m = 0; m < generators_.size(); ++m) {
        if (std::abs(norms_[m] - ref) > kTol * std::max(1.0, ref)) {
            std::ostringstream msg;
            msg << "drive '" << labels_[m] << "' has Frobenius norm " << norms_[m] << ", expected " << ref;
            throw Error(ErrorKind::Validation, msg.str());
        }
        for (std::size_t n = m + 1; n < generators_.size(); ++n) {
            const cplx overlap = (generators_[m].matrix() * generators_[n].matrix()).trace();
            if (std::abs(overlap) > kTol * scale) {
                throw Error(ErrorKind::Validation, "drives '" + labels_[m] + "' and '" + labels_[n] +
                                                       "' are not trace-orthogonal");
            }
        }
    }
}

std::size_t DriveSet::index_of(const std::string& label) const {
    for (std::size_t m = 0; m < labels_.size(); ++m) {
        if (labels_[m] == label) return m;
    }
    throw Error(ErrorKind::Validation, "unknown drive label '" + label + "'");
}

DriveSet DriveSet::subset(const std::vector<std::string>& labels) const {
    std::vector<Operator> gens;
    for (const auto& l : labels) gens.push_back(generators_[index_of(l)]);
    return DriveSet(std::move(gens), labels);
}

std::vector<Operator> ModelSpec::jumps() const {
    std::vector<Operator> out = gain_jumps;
    out.insert(out.end(), damping_jumps.begin(), damping_jumps.end());
    return out;
}

Liouvillian ModelSpec::liouvillian() const {
    const auto all = jumps();
    return build_liouvillian(H0, all);
}

Liouvillian ModelSpec::drive_liouvillian(std::size_t m) const {
    if (m >= drives.size()) throw Error(ErrorKind::Validation, "drive index out of range");
    return build_commutator(drives.generators()[m]);
}

void ModelSpec::validate() const {
    if (hdim == 0) throw Error(ErrorKind::Dimension, "model '" + name + "' has zero dimension");
    auto check_dim = [&](const Operator& op, const std::string& what) {
        if (op.dim() != hdim) {
            throw Error(ErrorKind::Dimension, what + " has dimension " + std::to_string(op.dim()) +
                                                  ", expected " + std::to_string(hdim));
        }
    };
    check_dim(H0, "H0");
    check_dim(symmetry_generator, "symmetry generator");
    for (const auto& j : jumps()) check_dim(j, "jump operator");
    for (const auto& h : drives.generators()) check_dim(h, "drive");
    for (const auto& o : observables) check_dim(o.op, "observable '" + o.label + "'");
    if (!H0.is_hermitian(1e-12)) throw Error(ErrorKind::Validation, "H0 is not Hermitian");
    const ChargeAssignment charges = assign_charges(symmetry_generator, hdim);
    const double violation = u1_violation(liouvillian(), charges);
    if (violation > 1e-10) {
        std::ostringstream msg;
        msg << "model '" << name << "' breaks the U(1) symmetry of its generator (relative violation "
            << violation << ")";
        throw Error(ErrorKind::SymmetryViolation, msg.str());
    }
}

namespace fock {

Operator annihilation(std::size_t levels) {
    const auto n = static_cast<Eigen::Index>(levels);
    Matrix a = Matrix::Zero(n, n);
    for (Eigen::Index m = 1; m < n; ++m) a(m - 1, m) = std::sqrt(static_cast<double>(m));
    return Operator(std::move(a));
}

Operator creation(std::size_t levels) { return annihilation(levels).adjoint(); }

Operator number(std::size_t levels) { return creation(levels) * annihilation(levels); }

Operator position(std::size_t levels) {
    const Matrix a = annihilation(levels).matrix();
    return Operator(0.5 * (a + a.adjoint()));
}

Operator momentum(std::size_t levels) {
    const Matrix a = annihilation(levels).matrix();
    return Operator((a - a.adjoint()) / cplx(0.0, 2.0));
}

Operator two_level_momentum(std::size_t levels) {
    Matrix p = momentum(levels).matrix();
    const auto n = static_cast<Eigen::Index>(levels);
    Matrix out = Matrix::Zero(n, n);
    out.topLeftCorner(2, 2) = p.topLeftCorner(2, 2);
    return Operator(std::move(out));
}

} // namespace fock

namespace qubits {

Matrix single(Pauli p) {
    // Single-qubit basis {↓, ↑}; σ⁺|↓> = |↑>.
    Matrix m = Matrix::Zero(2, 2);
    const cplx i(0.0, 1.0);
    switch (p) {
        case Pauli::I: m = Matrix::Identity(2, 2); break;
        case Pauli::X: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
        case Pauli::Y: m(0, 1) = i; m(1, 0) = -i; break;
        case Pauli::Z: m(0, 0) = -1.0; m(1, 1) = 1.0; break;
        case Pauli::Plus: m(1, 0) = 1.0; break;
        case Pauli::Minus: m(0, 1) = 1.0; break;
    }
    return m;
}

Operator on(std::size_t qubit, Pauli p) {
    if (qubit == 1) return Operator(kron(single(p), single(Pauli::I)));
    if (qubit == 2) return Operator(kron(single(Pauli::I), single(p)));
    throw Error(ErrorKind::Validation, "qubit index must be 1 or 2");
}

Operator total_sz() { return cplx(0.5) * (on(1, Pauli::Z) + on(2, Pauli::Z)); }

} // namespace qubits

ModelSpec vdp_model(double kappa1, double kappa2, std::size_t n_trunc) {
    if (!(kappa1 > 0.0) || !(kappa2 > 0.0)) {
        throw Error(ErrorKind::Validation, "vdp: kappa1 and kappa2 must be positive");
    }
    if (n_trunc < 3) throw Error(ErrorKind::Validation, "vdp: n_trunc must be >= 3");
    ModelSpec m;
    m.name = "vdp";
    m.hdim = n_trunc;
    m.H0 = Operator::zero(n_trunc);
    m.gain_jumps = {cplx(std::sqrt(kappa1)) * fock::creation(n_trunc)};
    const Operator a = fock::annihilation(n_trunc);
    m.damping_jumps = {cplx(std::sqrt(kappa2)) * (a * a)};
    m.symmetry_generator = fock::number(n_trunc);
    m.drives = DriveSet({fock::position(n_trunc)}, {"x"});
    m.params = {{"kappa1", kappa1}, {"kappa2", kappa2}, {"n_trunc", static_cast<double>(n_trunc)}};
    m.observables = {{"p", fock::momentum(n_trunc)}, {"sigma_y", fock::two_level_momentum(n_trunc)}};
    m.reference_rate_name = "kappa1";
    m.reference_rate = kappa1;
    return m;
}

std::size_t vdp_truncation_start(double kappa1, double kappa2) {
    const double guess = std::ceil(3.0 * kappa1 / (2.0 * kappa2)) + 10.0;
    return static_cast<std::size_t>(std::max(6.0, guess));
}

TruncationResult vdp_auto_truncation_detailed(double kappa1, double kappa2, double tail_tol,
                                              std::size_t cap) {
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
        throw Error(ErrorKind::Validation, "tail_tol must lie in (0, 1)");
    }
    TruncationResult out;
    std::size_t n = vdp_truncation_start(kappa1, kappa2);
    while (true) {
        if (n > cap) {
            std::ostringstream msg;
            msg << "vdp truncation would exceed the cap of " << cap << " levels";
            throw Error(ErrorKind::TruncationCap, msg.str());
        }
        const ModelSpec model = vdp_model(kappa1, kappa2, n);
        const DensityMatrix rho = steady_state(model.liouvillian());
        const RealVector p = rho.matrix().diagonal().real();
        double tail = 0.0;
        for (std::size_t m = n - 2; m < n; ++m) tail += std::max(0.0, p(static_cast<Eigen::Index>(m)));
        if (tail < tail_tol) {
            out.n_trunc = n;
            out.tail = tail;
            return out;
        }
        n = static_cast<std::size_t>(std::ceil(1.25 * static_cast<double>(n)));
        ++out.growth_steps;
    }
}

std::size_t vdp_auto_truncation(double kappa1, double kappa2, double tail_tol, std::size_t cap) {
    return vdp_auto_truncation_detailed(kappa1, kappa2, tail_tol, cap).n_trunc;
}

VdpReferenceLimits vdp_reference_limits(double kappa1, double kappa2) {
    VdpReferenceLimits r{};
    r.F_classical = 4.0 / (9.0 * kappa1 * kappa2);
    r.mu_classical = r.F_classical;
    r.omega_tilde_classical = r.F_classical / 2.0;
    r.F_quantum = 4.0 / (81.0 * kappa1 * kappa1);
    r.mu_quantum = 4.0 / (135.0 * kappa1 * kappa1);
    return r;
}

ModelSpec tqo_model(double g, double Gamma, double w1, double gamma1, double w2, double gamma2) {
    if (Gamma < 0.0 || w1 < 0.0 || gamma1 < 0.0 || w2 < 0.0 || gamma2 < 0.0) {
        throw Error(ErrorKind::Validation, "tqo: rates must be nonnegative");
    }
    using qubits::Pauli;
    using qubits::on;
    ModelSpec m;
    m.name = "tqo";
    m.hdim = 4;
    const Operator hop = on(1, Pauli::Plus) * on(2, Pauli::Minus) - on(2, Pauli::Plus) * on(1, Pauli::Minus);
    m.H0 = cplx(0.0, -g) * hop;
    if (w1 > 0.0) m.gain_jumps.push_back(cplx(std::sqrt(w1)) * on(1, Pauli::Plus));
    if (w2 > 0.0) m.gain_jumps.push_back(cplx(std::sqrt(w2)) * on(2, Pauli::Plus));
    if (gamma1 > 0.0) m.damping_jumps.push_back(cplx(std::sqrt(gamma1)) * on(1, Pauli::Minus));
    if (gamma2 > 0.0) m.damping_jumps.push_back(cplx(std::sqrt(gamma2)) * on(2, Pauli::Minus));
    m.symmetry_generator = qubits::total_sz();
    m.drives = DriveSet(
        {on(1, Pauli::X), on(2, Pauli::X), on(2, Pauli::Z) * on(1, Pauli::X), on(1, Pauli::Z) * on(2, Pauli::X),
         on(1, Pauli::Y), on(2, Pauli::Y), on(2, Pauli::Z) * on(1, Pauli::Y), on(1, Pauli::Z) * on(2, Pauli::Y)},
        {"sx1", "sx2", "sz2sx1", "sz1sx2", "sy1", "sy2", "sz2sy1", "sz1sy2"});
    m.params = {{"g", g}, {"Gamma", Gamma}, {"w1", w1}, {"gamma1", gamma1}, {"w2", w2}, {"gamma2", gamma2}};
    m.observables = {{"sy1", on(1, Pauli::Y)}, {"sy2", on(2, Pauli::Y)}};
    m.reference_rate_name = "Gamma";
    m.reference_rate = Gamma > 0.0 ? Gamma : 1.0;
    return m;
}

ModelSpec tqo_model_default(double g, double Gamma) { return tqo_model(g, Gamma, 0.0, Gamma, Gamma, 0.0); }

TqoExpectations tqo_analytic_steady(double gbar, double d1, double d2) {
    const double g2 = gbar * gbar;
    const double den = 1.0 + 4.0 * g2;
    return TqoExpectations{
        (d1 + 2.0 * g2 * (d1 + d2)) / den,
        (d2 + 2.0 * g2 * (d1 + d2)) / den,
        gbar * (d1 - d2) / (2.0 * den),
        (d1 * d2 + g2 * (d1 + d2) * (d1 + d2)) / den,
    };
}

TqoExpectations tqo_expectations(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw Error(ErrorKind::Dimension, "tqo_expectations expects a 4x4 state");
    using qubits::Pauli;
    using qubits::on;
    const Matrix& r = rho.matrix();
    auto ev = [&](const Operator& o) { return (o.matrix() * r).trace(); };
    return TqoExpectations{
        ev(on(1, Pauli::Z)).real(),
        ev(on(2, Pauli::Z)).real(),
        ev(on(1, Pauli::Plus) * on(2, Pauli::Minus)).real(),
        ev(on(1, Pauli::Z) * on(2, Pauli::Z)).real(),
    };
}

TqoResponse tqo_analytic_response(double gbar, double d1, double d2, double Gamma) {
    const double g = gbar * Gamma;
    Eigen::Matrix4d M;
    M << -Gamma / 2.0, 0.0, 0.0, g,
         0.0, -Gamma / 2.0, -g, 0.0,
         Gamma * d2, g, -1.5 * Gamma, 0.0,
         -g, Gamma * d1, 0.0, -1.5 * Gamma;
    const TqoExpectations x = tqo_analytic_steady(gbar, d1, d2);
    const Eigen::Vector4d c(x.x1, 0.0, x.x4, -2.0 * x.x3);
    const double scale = std::pow(std::max({Gamma, std::abs(g), 1e-300}), 4);
    if (std::abs(M.determinant()) <= 1e-12 * scale) {
        throw Error(ErrorKind::SingularSystem, "tqo response system is singular");
    }
    const Eigen::Vector4d real_part = M.fullPivLu().solve(c);
    TqoResponse y;
    for (int k = 0; k < 4; ++k) y[static_cast<std::size_t>(k)] = cplx(0.0, real_part(k));
    return y;
}

TqoResponse tqo_response_expectations(const ResponseMatrix& resp) {
    if (resp.op.dim() != 4) throw Error(ErrorKind::Dimension, "tqo_response_expectations expects 4x4");
    if (resp.basis != Basis::Working) {
        throw Error(ErrorKind::Validation, "tqo_response_expectations expects a working-basis response");
    }
    using qubits::Pauli;
    using qubits::on;
    const Matrix& r = resp.op.matrix();
    auto ev = [&](const Operator& o) { return (o.matrix() * r).trace(); };
    return TqoResponse{
        ev(on(1, Pauli::Plus)),
        ev(on(2, Pauli::Plus)),
        ev(on(2, Pauli::Z) * on(1, Pauli::Plus)),
        ev(on(1, Pauli::Z) * on(2, Pauli::Plus)),
    };
}

double tqo_gstar(double Gamma) { return std::sqrt(3.0) * Gamma / 2.0; }

} // namespace qsync
