#include <algorithm>
#include <cmath>
#include <string>

#include "shadow_transport/coupling.hpp"
#include "shadow_transport/error.hpp"
#include "shadow_transport/tolerances.hpp"

namespace shadow_transport {

namespace {

constexpr double kLiftSlack = 1e-12;

void require_probability(const DiscreteMeasure& mu) {
    if (std::abs(mu.mass() - 1.0) > 1e-9) {
        throw Error(ErrorCode::MassNotOne, "lifted measure has mass " + std::to_string(mu.mass()));
    }
}

}  // namespace

LiftSpec::LiftSpec(LiftKind kind, std::vector<LiftSegment> segments) : kind_(kind), segments_(std::move(segments)) {
    if (segments_.empty()) throw Error(ErrorCode::InvalidLift, "lift has no segments");
    if (std::abs(segments_.front().u_lo) > kLiftSlack) {
        throw Error(ErrorCode::InvalidLift, "lift does not start at u = 0");
    }
    segments_.front().u_lo = 0.0;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        LiftSegment& s = segments_[i];
        if (i > 0) {
            if (std::abs(s.u_lo - segments_[i - 1].u_hi) > kLiftSlack) {
                throw Error(ErrorCode::InvalidLift, "lift segments are not contiguous");
            }
            s.u_lo = segments_[i - 1].u_hi;
        }
        if (i + 1 == segments_.size()) {
            if (std::abs(s.u_hi - 1.0) > kLiftSlack) throw Error(ErrorCode::InvalidLift, "lift does not end at u = 1");
            s.u_hi = 1.0;
        }
        if (!(s.u_hi > s.u_lo)) throw Error(ErrorCode::InvalidLift, "empty lift segment");
        if (std::abs(s.kernel.mass() - 1.0) > tolerances().convexity) {
            throw Error(ErrorCode::InvalidLift, "lift kernel has mass " + std::to_string(s.kernel.mass()));
        }
    }
}

DiscreteMeasure LiftSpec::cumulative(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) throw Error(ErrorCode::OutOfRange, "lift level outside [0,1]");
    std::vector<Atom> acc;
    for (const LiftSegment& s : segments_) {
        if (u <= s.u_lo) break;
        const double len = std::min(u, s.u_hi) - s.u_lo;
        for (const Atom& a : s.kernel.atoms()) acc.push_back({a.x, a.w * len});
    }
    return DiscreteMeasure(std::move(acc), 0.0);
}

LiftSpec make_lift(LiftKind kind, const DiscreteMeasure& mu) {
    require_probability(mu);
    std::vector<LiftSegment> segs;
    switch (kind) {
        case LiftKind::Uniform:
            segs.push_back({0.0, 1.0, mu.scaled(1.0 / mu.mass())});
            break;
        case LiftKind::DecreasingQuantile:
        case LiftKind::IncreasingQuantile: {
            std::vector<Atom> order(mu.atoms().begin(), mu.atoms().end());
            if (kind == LiftKind::DecreasingQuantile) std::reverse(order.begin(), order.end());
            double u = 0.0;
            for (const Atom& a : order) {
                segs.push_back({u, u + a.w, DiscreteMeasure::point(a.x)});
                u += a.w;
            }
            segs.back().u_hi = 1.0;
            break;
        }
        case LiftKind::Custom:
            throw Error(ErrorCode::InvalidLift, "custom lifts are built from explicit segments");
    }
    return LiftSpec(kind, std::move(segs));
}

DiscreteMeasure mu_cumulative(const DiscreteMeasure& mu, double u) {
    if (!(u >= 0.0 && u <= 1.0)) throw Error(ErrorCode::OutOfRange, "level outside [0,1]");
    require_probability(mu);
    std::vector<Atom> taken;
    double left = u * mu.mass();
    const auto atoms = mu.atoms();
    for (std::size_t k = atoms.size(); k-- > 0 && left > 0.0;) {
        const double w = std::min(atoms[k].w, left);
        taken.push_back({atoms[k].x, w});
        left -= w;
    }
    return DiscreteMeasure(std::move(taken), 0.0);
}

std::string_view to_string(LiftKind kind) noexcept {
    switch (kind) {
        case LiftKind::DecreasingQuantile: return "decreasing";
        case LiftKind::IncreasingQuantile: return "increasing";
        case LiftKind::Uniform: return "uniform";
        case LiftKind::Custom: return "custom";
    }
    return "?";
}

std::string_view to_string(MonotonicityKind kind) noexcept {
    switch (kind) {
        case MonotonicityKind::FirstOrderLeft: return "first-order-left";
        case MonotonicityKind::SecondOrderRight: return "second-order-right";
    }
    return "?";
}

}  // namespace shadow_transport
