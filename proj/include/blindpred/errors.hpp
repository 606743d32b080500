#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace blindpred {

enum class ErrorCode {
    NonPositiveSpectrum,
    LagOutOfRange,
    NotPositiveDefinite,
    HorizonTooSmall,
    LagTooLarge,
    WindowTooLarge,
    DomainError,
    InvalidInput,
};

std::string_view to_string(ErrorCode code);

/// Exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace blindpred
