#pragma once

#include <string_view>

#include "shadow_transport/measure.hpp"
#include "shadow_transport/piecewise_linear.hpp"

namespace shadow_transport {

/// Put, call and (negative absolute) potentials of a measure:
/// P(k) = int (k-x)^+, C(k) = int (x-k)^+, U(k) = -int |k-x|.
struct Potentials {
    PiecewiseLinear put;
    PiecewiseLinear call;
    PiecewiseLinear u;
};

PiecewiseLinear put_potential(const DiscreteMeasure& m);
PiecewiseLinear call_potential(const DiscreteMeasure& m);
Potentials potentials(const DiscreteMeasure& m);

enum class OrderRelation {
    Sto,  // stochastic order
    C,    // convex order
    CD,   // convex-decreasing order
    PC,   // positive convex order
    PCD,  // positive convex-decreasing order
    Leq,  // set-wise domination
};

std::string_view to_string(OrderRelation rel) noexcept;

/// Decides a <rel> b exactly for atomic measures, up to the convexity
/// tolerance. Mass-equal relations return false on a mass mismatch.
bool order_check(OrderRelation rel, const DiscreteMeasure& a, const DiscreteMeasure& b);

}  // namespace shadow_transport
