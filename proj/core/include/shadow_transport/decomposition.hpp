#pragma once

#include <string_view>
#include <vector>

#include "shadow_transport/measure.hpp"

namespace shadow_transport {

enum class ComponentKind { Supermartingale, Martingale, Identity };

std::string_view to_string(ComponentKind kind) noexcept;

// Martingale and supermartingale components are open intervals (lo, hi);
// identity components are closed runs [lo, hi] on which the two put
// potentials agree.
struct Component {
    double lo = 0.0;
    double hi = 0.0;
    ComponentKind kind = ComponentKind::Identity;
    DiscreteMeasure mu;
    DiscreteMeasure nu;
};

struct Decomposition {
    double x_star = 0.0;  // -inf when only the leading zero run of D exists, +inf for equal means
    std::vector<Component> components;
};

/// Splits a pair mu <=_cd nu along the zeros of D = P_nu - P_mu. Boundary
/// atoms of nu are shared between neighbouring components so that martingale
/// pieces keep their mean and every piece keeps its mass. Throws
/// OrderViolation, and DecompositionFailure if the pieces fail to reassemble.
Decomposition irreducible_decompose(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

}  // namespace shadow_transport
