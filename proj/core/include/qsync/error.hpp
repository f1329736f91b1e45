// error.hpp: exception type shared by every qsync module

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsync {

enum class ErrorKind {
    Dimension,
    Validation,
    NonUniqueSteadyState,
    NumericalFailure,
    InvalidPerturbation,
    IllConditioned,
    SymmetryViolation,
    SingularMatrix,
    EpsTooLarge,
    TruncationCap,
    DegenerateObservable,
    SingularSystem,
    Parse,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Dimension: return "dimension";
        case ErrorKind::Validation: return "validation";
        case ErrorKind::NonUniqueSteadyState: return "non-unique-steady-state";
        case ErrorKind::NumericalFailure: return "numerical-failure";
        case ErrorKind::InvalidPerturbation: return "invalid-perturbation";
        case ErrorKind::IllConditioned: return "ill-conditioned";
        case ErrorKind::SymmetryViolation: return "symmetry-violation";
        case ErrorKind::SingularMatrix: return "singular-matrix";
        case ErrorKind::EpsTooLarge: return "eps-too-large";
        case ErrorKind::TruncationCap: return "truncation-cap";
        case ErrorKind::DegenerateObservable: return "degenerate-observable";
        case ErrorKind::SingularSystem: return "singular-system";
        case ErrorKind::Parse: return "parse";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace qsync
