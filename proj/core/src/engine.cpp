#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "shadow_transport/coupling.hpp"
#include "shadow_transport/dilation.hpp"
#include "shadow_transport/error.hpp"
#include "shadow_transport/potentials.hpp"
#include "shadow_transport/tolerances.hpp"

namespace shadow_transport {

namespace {

constexpr double kTimeSlack = 1e-11;

}  // namespace

double FlowSegment::mean_drop_rate() const {
    double s = 0.0;
    for (const Flow& f : flows) s += f.rate * (f.x - f.y);
    return s;
}

bool FlowSegment::has_source(double x) const {
    return std::any_of(flows.begin(), flows.end(), [&](const Flow& f) { return f.x == x; });
}

std::vector<double> LiftedCoupling::event_boundaries() const {
    std::vector<double> out;
    out.reserve(segments_.size() + 1);
    for (const FlowSegment& s : segments_) out.push_back(s.u_lo);
    if (!segments_.empty()) out.push_back(segments_.back().u_hi);
    return out;
}

DiscreteMeasure LiftedCoupling::cumulative_target(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) throw Error(ErrorCode::OutOfRange, "level outside [0,1]");
    if (segments_.empty() || u <= 0.0) return {};
    auto it = std::upper_bound(segments_.begin(), segments_.end(), u,
                               [](double v, const FlowSegment& s) { return v < s.u_lo; });
    const FlowSegment& s = *std::prev(it);
    const double len = std::min(u, s.u_hi) - s.u_lo;
    std::vector<Atom> acc(s.consumed_before.atoms().begin(), s.consumed_before.atoms().end());
    for (const Flow& f : s.flows) acc.push_back({f.y, f.rate * len});
    return DiscreteMeasure(std::move(acc), 0.0);
}

DiscreteMeasure LiftedCoupling::remaining_target(double u) const {
    const DiscreteMeasure used = cumulative_target(u);
    std::vector<Atom> rem;
    for (const Atom& a : target_.atoms()) {
        const double w = a.w - used.weight_at(a.x);
        if (w > tolerances().exhaustion * target_.mass()) rem.push_back({a.x, w});
    }
    return DiscreteMeasure(std::move(rem), 0.0);
}

LiftedCoupling lifted_shadow_coupling(const LiftSpec& lift, const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
    if (!order_check(OrderRelation::CD, mu, nu)) {
        throw Error(ErrorCode::OrderViolation, "lifted shadow coupling requires mu <=_cd nu");
    }
    if (max_atom_gap(lift.cumulative(1.0), mu) > tolerances().convexity * std::max(1.0, mu.mass())) {
        throw Error(ErrorCode::InvalidLift, "lift does not integrate to mu");
    }

    const std::vector<double> ys = nu.positions();
    std::vector<double> rem(ys.size());
    for (std::size_t j = 0; j < ys.size(); ++j) rem[j] = nu[j].w;
    const double exhausted = tolerances().exhaustion * nu.mass();
    std::vector<double> consumed(ys.size(), 0.0);

    auto index_of = [&](double y) {
        auto it = std::lower_bound(ys.begin(), ys.end(), y);
        if (it == ys.end() || *it != y) throw Error(ErrorCode::InternalInvariant, "dilation left the target support");
        return static_cast<std::size_t>(it - ys.begin());
    };

    std::vector<FlowSegment> out;
    for (const LiftSegment& ls : lift.segments()) {
        double u = ls.u_lo;
        while (u < ls.u_hi) {
            std::vector<double> active;
            for (std::size_t j = 0; j < ys.size(); ++j) {
                if (rem[j] > 0.0) active.push_back(ys[j]);
            }
            if (active.empty()) throw Error(ErrorCode::InternalInvariant, "target exhausted before the lift ended");
            const TargetSet targets(std::move(active));

            std::vector<Flow> flows;
            std::vector<double> rate(ys.size(), 0.0);
            for (const Atom& src : ls.kernel.atoms()) {
                TwoPointKernel k;
                try {
                    k = dilate(targets, src.x);
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::BelowSupport) throw;
                    throw Error(ErrorCode::InternalInvariant,
                                "source " + std::to_string(src.x) + " lies below the remaining target");
                }
                const double lw = k.lower_weight();
                const double uw = k.upper_weight();
                if (lw > 0.0) {
                    flows.push_back({src.x, k.lower, src.w * lw});
                    rate[index_of(k.lower)] += src.w * lw;
                }
                if (uw > 0.0) {
                    flows.push_back({src.x, k.upper, src.w * uw});
                    rate[index_of(k.upper)] += src.w * uw;
                }
            }

            double dt = ls.u_hi - u;
            bool hits_end = true;
            std::size_t first_out = 0;
            for (std::size_t j = 0; j < ys.size(); ++j) {
                if (rate[j] > 0.0 && rem[j] / rate[j] < dt) {
                    dt = rem[j] / rate[j];
                    hits_end = false;
                    first_out = j;
                }
            }
            // Exhaustion within rounding of the segment end is the segment end.
            const bool exhausts = !hits_end;
            if (exhausts && ls.u_hi - (u + dt) <= kTimeSlack) hits_end = true;
            const double u_next = hits_end ? ls.u_hi : u + dt;

            std::vector<Atom> before;
            for (std::size_t j = 0; j < ys.size(); ++j) {
                if (consumed[j] > 0.0) before.push_back({ys[j], consumed[j]});
            }
            if (u_next > u) out.push_back({u, u_next, std::move(flows), DiscreteMeasure(std::move(before), 0.0)});

            // Every atom whose own exhaustion time is within rounding of the
            // event is removed in this same event.
            for (std::size_t j = 0; j < ys.size(); ++j) {
                if (rate[j] <= 0.0) continue;
                const double used = std::min(rem[j], rate[j] * (u_next - u));
                consumed[j] += used;
                rem[j] -= used;
                if (rem[j] <= exhausted) rem[j] = 0.0;
            }
            if (exhausts && rem[first_out] > 0.0) {  // rounding residue of the event atom
                consumed[first_out] += rem[first_out];
                rem[first_out] = 0.0;
            }
            u = u_next;
        }
    }
    return LiftedCoupling(std::move(out), nu);
}

DiscreteCoupling project(const LiftedCoupling& lifted) {
    std::vector<Cell> cells;
    for (const FlowSegment& s : lifted.segments()) {
        for (const Flow& f : s.flows) cells.push_back({f.x, f.y, f.rate * s.length()});
    }
    return DiscreteCoupling(std::move(cells));
}

namespace {

double position_scale(const FlowSegment& s) {
    double m = 0.0;
    for (const Flow& f : s.flows) m = std::max({m, std::abs(f.x), std::abs(f.y)});
    return m;
}

bool is_martingale_rate(double drop, double scale) {
    return drop <= tolerances().martingale * (1.0 + scale);
}

}  // namespace

CCurve c_curve(const LiftedCoupling& lifted) {
    CCurve out;
    const auto& segs = lifted.segments();
    if (segs.empty()) return out;
    std::vector<double> us;
    std::vector<double> cs;
    double c = 0.0;
    for (const FlowSegment& s : segs) {
        us.push_back(s.u_lo);
        cs.push_back(c);
        const double slope = s.mean_drop_rate();
        c += slope * s.length();
        if (is_martingale_rate(slope, position_scale(s))) {
            if (!out.martingale_set.empty() && out.martingale_set.back().hi == s.u_lo) {
                out.martingale_set.back().hi = s.u_hi;
            } else {
                out.martingale_set.push_back({s.u_lo, s.u_hi});
            }
        }
    }
    us.push_back(segs.back().u_hi);
    cs.push_back(c);
    out.curve = PiecewiseLinear(std::move(us), std::move(cs), 0.0, 0.0);
    return out;
}

CCurve c_curve(const LiftSpec& lift, const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
    return c_curve(lifted_shadow_coupling(lift, mu, nu));
}

DecreasingCoupling pi_decreasing(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
    LiftedCoupling lifted = lifted_shadow_coupling(make_lift(LiftKind::DecreasingQuantile, mu), mu, nu);
    DiscreteCoupling coupling = project(lifted);
    CCurve curve = c_curve(lifted);
    return {std::move(coupling), std::move(lifted), std::move(curve)};
}

std::vector<double> martingale_sources(const LiftedCoupling& lifted) {
    std::map<double, bool> seen;
    for (const FlowSegment& s : lifted.segments()) {
        std::map<double, std::pair<double, double>> per_source;  // x -> (drop, scale)
        for (const Flow& f : s.flows) {
            auto& [drop, scale] = per_source[f.x];
            drop += f.rate * (f.x - f.y);
            scale = std::max({scale, std::abs(f.x), std::abs(f.y)});
        }
        for (const auto& [x, ds] : per_source) {
            const bool flat = is_martingale_rate(ds.first, ds.second);
            const auto it = seen.find(x);
            seen[x] = (it == seen.end() ? true : it->second) && flat;
        }
    }
    std::vector<double> out;
    for (const auto& [x, all_flat] : seen) {
        if (all_flat) out.push_back(x);
    }
    return out;
}

}  // namespace shadow_transport
