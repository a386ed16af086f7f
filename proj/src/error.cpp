#include "adpath/error.hpp"

namespace adpath {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::NonPositiveRate: return "NonPositiveRate";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::GapClosure: return "GapClosure";
    case ErrorKind::StepLimitExceeded: return "StepLimitExceeded";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorKind::NoIntersection: return "NoIntersection";
    }
    return "Unknown";
}

} // namespace adpath
