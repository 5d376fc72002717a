#pragma once

#include "shadow_transport/measure.hpp"
#include "shadow_transport/piecewise_linear.hpp"

namespace shadow_transport {

struct ShadowResult {
    DiscreteMeasure shadow;
    double defect = 0.0;   // mean(mu) - mean(shadow)
    PiecewiseLinear hull;  // convex hull of P_nu - P_mu
};

/// Supermartingale shadow of mu in nu: the convex-decreasing-minimal measure
/// theta <= nu with mu <=_cd theta, read off from
///     P_shadow = P_nu - (P_nu - P_mu)^c.
/// Throws OrderViolation unless mu <=_pcd nu.
ShadowResult shadow(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// sup_k { C_eta(k) - C_chi(k) }, the mean lost when embedding eta into chi.
/// Throws OrderViolation unless eta <=_pcd chi.
double defect_constant(const DiscreteMeasure& eta, const DiscreteMeasure& chi);

/// The part of chi sitting furthest left with total mass `mass`.
/// Throws MassExceeds when mass > mass(chi).
DiscreteMeasure leftmost(double mass, const DiscreteMeasure& chi);

inline DiscreteMeasure leftmost(const DiscreteMeasure& eta, const DiscreteMeasure& chi) {
    return leftmost(eta.mass(), chi);
}

}  // namespace shadow_transport
