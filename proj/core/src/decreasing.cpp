#include <algorithm>
#include <cmath>
#include <limits>

#include "shadow_transport/coupling.hpp"
#include "shadow_transport/error.hpp"
#include "shadow_transport/potentials.hpp"
#include "shadow_transport/tolerances.hpp"

namespace shadow_transport {

namespace {

void require_level(double u) {
    if (!(u >= 0.0 && u <= 1.0)) throw Error(ErrorCode::OutOfRange, "level outside [0,1]");
}

}  // namespace

PiecewiseLinear e_function(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double u) {
    require_level(u);
    if (!order_check(OrderRelation::CD, mu, nu)) {
        throw Error(ErrorCode::OrderViolation, "E_u requires mu <=_cd nu");
    }
    const PiecewiseLinear d = put_potential(nu) - put_potential(mu);
    return d + call_potential(mu) - call_potential(mu_cumulative(mu, u));
}

SupportingPoints rs_at(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double u) {
    SupportingPoints out;
    out.hull = convex_hull(e_function(mu, nu, u));

    double x = u > 0.0 ? quantile(mu, 1.0 - u, QuantileSide::Right) : kInf;
    if (!std::isfinite(x)) x = mu.max_position();
    out.source = x;
    out.slope = right_slope(out.hull, x);

    // The hull is pruned, so the contact set of the supporting line of slope
    // phi at x runs between the neighbouring kinks.
    const Tolerances& tol = tolerances();
    const auto& bps = out.hull.breakpoints();
    out.lower = -kInf;
    out.upper = kInf;
    for (double b : bps) {
        if (tol.same_position(b, x)) {
            out.lower = x;
        } else if (b < x) {
            out.lower = b;
        } else {
            out.upper = b;
            break;
        }
    }
    return out;
}

MonotonicityReport monotonicity_audit(const DiscreteCoupling& pi, const std::vector<double>& martingale) {
    const Tolerances& tol = tolerances();
    const auto& cells = pi.cells();
    MonotonicityReport report;

    auto strictly_less = [&](double a, double b) { return a < b && !tol.same_position(a, b); };
    auto in_martingale = [&](double x) {
        return std::any_of(martingale.begin(), martingale.end(), [&](double m) { return tol.same_position(m, x); });
    };

    // Second order: every source x with targets spread over [ymin, ymax]
    // forbids sources to its left from landing strictly inside.
    std::size_t i = 0;
    while (i < cells.size()) {
        std::size_t j = i;
        std::size_t lo = i;
        std::size_t hi = i;
        while (j < cells.size() && tol.same_position(cells[j].x, cells[i].x)) {
            if (cells[j].y < cells[lo].y) lo = j;
            if (cells[j].y > cells[hi].y) hi = j;
            ++j;
        }
        if (strictly_less(cells[lo].y, cells[hi].y)) {
            for (const Cell& c : cells) {
                if (!strictly_less(c.x, cells[i].x)) continue;
                if (strictly_less(cells[lo].y, c.y) && strictly_less(c.y, cells[hi].y)) {
                    report.violations.push_back({MonotonicityKind::SecondOrderRight, cells[lo], cells[hi], c});
                }
            }
        }
        i = j;
    }

    for (const Cell& a : cells) {
        for (const Cell& b : cells) {
            if (!strictly_less(a.x, b.x) || in_martingale(b.x)) continue;
            if (strictly_less(b.y, a.y)) report.violations.push_back({MonotonicityKind::FirstOrderLeft, a, b, {}});
        }
    }
    return report;
}

}  // namespace shadow_transport
