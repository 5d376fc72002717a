#include "shadow_transport/shadow.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shadow_transport/error.hpp"
#include "shadow_transport/potentials.hpp"
#include "shadow_transport/tolerances.hpp"

namespace shadow_transport {

namespace {

void require_pcd(const DiscreteMeasure& a, const DiscreteMeasure& b, const char* what) {
    if (!order_check(OrderRelation::PCD, a, b)) {
        throw Error(ErrorCode::OrderViolation, std::string(what) + ": first measure is not <=_pcd the second");
    }
}

}  // namespace

ShadowResult shadow(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
    require_pcd(mu, nu, "shadow");
    const PiecewiseLinear put_nu = put_potential(nu);
    const PiecewiseLinear gap = put_nu - put_potential(mu);
    ShadowResult out;
    out.hull = convex_hull(gap);
    TailedMeasure extracted = measure_from_convex(put_nu - out.hull);

    // Curvature can only appear where nu has atoms; snap to them so that
    // downstream atom-wise comparisons with nu are exact.
    std::vector<Atom> atoms;
    atoms.reserve(extracted.body.size());
    const double cap_slack = tolerances().convexity * std::max(1.0, nu.mass());
    for (const Atom& a : extracted.body.atoms()) {
        const double available = nu.weight_at(a.x);
        if (available <= 0.0) {
            if (a.w > cap_slack) {
                throw Error(ErrorCode::InternalInvariant,
                            "shadow charges " + std::to_string(a.x) + " where nu has no atom");
            }
            continue;
        }
        atoms.push_back({a.x, std::min(a.w, available)});
    }
    for (Atom& a : atoms) {
        for (const Atom& n : nu.atoms()) {
            if (tolerances().same_position(n.x, a.x)) a.x = n.x;
        }
    }
    out.shadow = DiscreteMeasure(std::move(atoms));
    out.defect = std::max(0.0, mu.mean() - out.shadow.mean());
    return out;
}

double defect_constant(const DiscreteMeasure& eta, const DiscreteMeasure& chi) {
    require_pcd(eta, chi, "defect_constant");
    const PiecewiseLinear diff = call_potential(eta) - call_potential(chi);
    // The right tail of C_eta - C_chi is flat at 0 and the left tail rises to
    // the right, so the supremum is attained at a breakpoint or at +infinity.
    double sup = 0.0;
    for (double v : diff.values()) sup = std::max(sup, v);
    if (diff.is_line()) sup = std::max(sup, diff.intercept());
    return sup;
}

DiscreteMeasure leftmost(double mass, const DiscreteMeasure& chi) {
    const double eps = tolerances().mass * std::max(1.0, chi.mass());
    if (mass > chi.mass() + eps) {
        throw Error(ErrorCode::MassExceeds, "leftmost: requested mass " + std::to_string(mass) +
                                                " exceeds available " + std::to_string(chi.mass()));
    }
    std::vector<Atom> out;
    double remaining = mass;
    for (const Atom& a : chi.atoms()) {
        if (remaining <= eps) break;
        const double take = std::min(a.w, remaining);
        out.push_back({a.x, take});
        remaining -= take;
    }
    return DiscreteMeasure(std::move(out));
}

}  // namespace shadow_transport
