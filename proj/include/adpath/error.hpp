// error.hpp: Error kinds raised by the adpath library

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adpath {

enum class ErrorKind {
    // input / contract violations
    NotHermitian,
    DimensionMismatch,
    NotMonotone,
    NotPSD,
    NonPositiveRate,
    InvalidArgument,
    // numerical failures
    DegenerateSpectrum,
    GapClosure,
    StepLimitExceeded,
    InvalidState,
    QuadratureNotConverged,
    NoIntersection,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Input errors are caller mistakes (bad matrices, bad grids); everything else
// is a numerical failure detected while computing.
constexpr bool is_input_error(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::NotHermitian:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::NotMonotone:
    case ErrorKind::NotPSD:
    case ErrorKind::NonPositiveRate:
    case ErrorKind::InvalidArgument:
        return true;
    default:
        return false;
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace adpath
