#include "shadow_transport/tolerances.hpp"

#include <cstdlib>
#include <string>

#include "shadow_transport/error.hpp"

namespace shadow_transport {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonFiniteInput: return "NonFiniteInput";
        case ErrorCode::NegativeWeight: return "NegativeWeight";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::MassMismatch: return "MassMismatch";
        case ErrorCode::MassExceeds: return "MassExceeds";
        case ErrorCode::MassNotOne: return "MassNotOne";
        case ErrorCode::UnboundedBelow: return "UnboundedBelow";
        case ErrorCode::NotConvex: return "NotConvex";
        case ErrorCode::OrderViolation: return "OrderViolation";
        case ErrorCode::BelowSupport: return "BelowSupport";
        case ErrorCode::InvalidLift: return "InvalidLift";
        case ErrorCode::InternalInvariant: return "InternalInvariant";
        case ErrorCode::DecompositionFailure: return "DecompositionFailure";
        case ErrorCode::SizeCap: return "SizeCap";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

Tolerances tolerances_from_scalar(double t) {
    Tolerances tol;
    tol.position = t;
    tol.mass = t;
    tol.slope = t;
    tol.exhaustion = t;
    tol.convexity = 100.0 * t;
    tol.martingale = 100.0 * t;
    return tol;
}

namespace {

Tolerances initial_tolerances() {
    if (const char* env = std::getenv("SHADOW_TRANSPORT_TOL")) {
        char* end = nullptr;
        const double t = std::strtod(env, &end);
        if (end != env && std::isfinite(t) && t > 0.0) {
            return tolerances_from_scalar(t);
        }
    }
    return Tolerances{};
}

Tolerances& mutable_tolerances() {
    static Tolerances tol = initial_tolerances();
    return tol;
}

}  // namespace

const Tolerances& tolerances() { return mutable_tolerances(); }

void set_tolerances(const Tolerances& tol) { mutable_tolerances() = tol; }

}  // namespace shadow_transport
