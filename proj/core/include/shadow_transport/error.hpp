#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shadow_transport {

enum class ErrorCode {
    NonFiniteInput,
    NegativeWeight,
    OutOfRange,
    MassMismatch,
    MassExceeds,
    MassNotOne,
    UnboundedBelow,
    NotConvex,
    OrderViolation,
    BelowSupport,
    InvalidLift,
    InternalInvariant,
    DecompositionFailure,
    SizeCap,
    ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every library failure is reported through this type; the code is what the
// CLI prints in its machine-readable error object.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(detail), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace shadow_transport
