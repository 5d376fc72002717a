#pragma once

#include <algorithm>
#include <cmath>

namespace shadow_transport {

// Relative tolerances used throughout the library. Inputs are desk-scale and
// every construction is exact up to floating-point noise, so these only need
// to absorb rounding.
struct Tolerances {
    double position = 1e-12;   // atoms closer than position*(1+|x|) merge
    double mass = 1e-12;       // relative to total mass
    double slope = 1e-12;      // collinearity pruning, relative to 1+|slope|
    double convexity = 1e-10;  // convexity / order checks, relative to scale
    double exhaustion = 1e-12; // engine atom exhaustion, relative to mass(nu)
    double martingale = 1e-10; // c-curve flat detection, relative to 1+scale

    bool same_position(double a, double b) const {
        return std::abs(a - b) <= position * (1.0 + std::max(std::abs(a), std::abs(b)));
    }
};

// Process-wide defaults. Read SHADOW_TRANSPORT_TOL once on first use; a value
// t sets the position/mass/slope/exhaustion tolerances to t and the
// convexity/martingale tolerances to 100*t.
const Tolerances& tolerances();

// Replaces the process-wide defaults. Not synchronised: call before any
// concurrent use of the library.
void set_tolerances(const Tolerances& tol);

Tolerances tolerances_from_scalar(double t);

}  // namespace shadow_transport
