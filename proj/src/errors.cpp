#include "blindpred/errors.hpp"

namespace blindpred {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonPositiveSpectrum: return "NonPositiveSpectrum";
        case ErrorCode::LagOutOfRange: return "LagOutOfRange";
        case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorCode::HorizonTooSmall: return "HorizonTooSmall";
        case ErrorCode::LagTooLarge: return "LagTooLarge";
        case ErrorCode::WindowTooLarge: return "WindowTooLarge";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace blindpred
