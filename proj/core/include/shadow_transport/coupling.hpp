#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shadow_transport/coupling_types.hpp"
#include "shadow_transport/measure.hpp"
#include "shadow_transport/piecewise_linear.hpp"

namespace shadow_transport {

// ---------------------------------------------------------------------------
// Lifts: couplings of Lebesgue measure on [0,1] with mu, restricted to kernels
// that are constant on finitely many u-segments.

enum class LiftKind { DecreasingQuantile, IncreasingQuantile, Uniform, Custom };

struct LiftSegment {
    double u_lo = 0.0;
    double u_hi = 0.0;
    DiscreteMeasure kernel;  // probability measure used on [u_lo, u_hi)
};

class LiftSpec {
public:
    /// Validates that the segments partition [0,1] and carry mass-one kernels.
    /// Throws InvalidLift.
    LiftSpec(LiftKind kind, std::vector<LiftSegment> segments);

    LiftKind kind() const noexcept { return kind_; }
    const std::vector<LiftSegment>& segments() const noexcept { return segments_; }

    /// The primitive curve: integral of the kernels over [0, u].
    DiscreteMeasure cumulative(double u) const;

private:
    LiftKind kind_;
    std::vector<LiftSegment> segments_;
};

/// Built-in lifts of a probability measure. Throws MassNotOne; Custom is
/// rejected with InvalidLift (construct LiftSpec directly instead).
LiftSpec make_lift(LiftKind kind, const DiscreteMeasure& mu);

/// Mass u of mu taken from the right: mu above G(1-u) plus the boundary
/// fragment. Throws OutOfRange unless 0 <= u <= 1, MassNotOne.
DiscreteMeasure mu_cumulative(const DiscreteMeasure& mu, double u);

// ---------------------------------------------------------------------------
// Lifted shadow couplings.

struct Flow {
    double x = 0.0;
    double y = 0.0;
    double rate = 0.0;  // mass per unit u
};

struct FlowSegment {
    double u_lo = 0.0;
    double u_hi = 0.0;
    std::vector<Flow> flows;
    DiscreteMeasure consumed_before;  // cumulative target measure at u_lo

    double length() const { return u_hi - u_lo; }
    /// Source mean minus target mean per unit u.
    double mean_drop_rate() const;
    bool has_source(double x) const;
};

class LiftedCoupling {
public:
    LiftedCoupling() = default;
    LiftedCoupling(std::vector<FlowSegment> segments, DiscreteMeasure target)
        : segments_(std::move(segments)), target_(std::move(target)) {}

    const std::vector<FlowSegment>& segments() const noexcept { return segments_; }
    const DiscreteMeasure& target() const noexcept { return target_; }

    /// Every segment start plus the final end.
    std::vector<double> event_boundaries() const;

    /// Target measure consumed by time u.
    DiscreteMeasure cumulative_target(double u) const;

    /// nu minus what has been consumed by time u; its support is T(u).
    DiscreteMeasure remaining_target(double u) const;

private:
    std::vector<FlowSegment> segments_;
    DiscreteMeasure target_;
};

/// Exact event-driven construction of the lifted shadow coupling: between
/// events every source atom follows the dilation onto the support of the
/// unconsumed part of nu; an event is the exhaustion of one or more atoms of
/// nu or the end of a lift segment. Throws OrderViolation unless mu <=_cd nu,
/// InvalidLift if the lift does not integrate to mu, InternalInvariant if the
/// dilation precondition ever fails.
LiftedCoupling lifted_shadow_coupling(const LiftSpec& lift, const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Integrates the lifted coupling over u.
DiscreteCoupling project(const LiftedCoupling& lifted);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// u -> c(u), the mean lost by the shadow embedding of the first u of the
/// lift, with the u-intervals on which it is flat (martingale points).
struct CCurve {
    PiecewiseLinear curve;  // breakpoints at the engine events on [0,1], flat tails
    std::vector<Interval> martingale_set;

    double at(double u) const { return curve(u); }
};

CCurve c_curve(const LiftedCoupling& lifted);
CCurve c_curve(const LiftSpec& lift, const DiscreteMeasure& mu, const DiscreteMeasure& nu);

struct DecreasingCoupling {
    DiscreteCoupling coupling;
    LiftedCoupling lifted;
    CCurve c_curve;
};

/// The decreasing supermartingale coupling via the decreasing quantile lift.
DecreasingCoupling pi_decreasing(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// Source atoms whose every flow segment is a martingale segment, i.e. whose
/// rows of the projected coupling are martingale rows.
std::vector<double> martingale_sources(const LiftedCoupling& lifted);

// ---------------------------------------------------------------------------
// Supporting functions of the decreasing coupling read off convex hulls.

/// E_u = (P_nu - P_mu) + C_mu - C_{mu_u}. Throws OrderViolation, OutOfRange.
PiecewiseLinear e_function(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double u);

struct SupportingPoints {
    double source = 0.0;  // G(1-u)
    double lower = 0.0;   // R(u)
    double upper = 0.0;   // S(u), +inf when the hull is flat out to infinity
    double slope = 0.0;   // phi(u)
    PiecewiseLinear hull;
};

/// R(u), S(u) and phi(u) from the hull of E_u at G(1-u), where G is the
/// right-continuous quantile of mu (the largest atom at u = 0).
SupportingPoints rs_at(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double u);

// ---------------------------------------------------------------------------

enum class MonotonicityKind { FirstOrderLeft, SecondOrderRight };

struct MonotonicityViolation {
    MonotonicityKind kind;
    Cell a;
    Cell b;
    Cell c;  // unused for first-order violations
};

struct MonotonicityReport {
    std::vector<MonotonicityViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Exhaustive check of second-order right-monotonicity over cell triples and
/// first-order left-monotonicity relative to the source set `martingale`.
MonotonicityReport monotonicity_audit(const DiscreteCoupling& pi, const std::vector<double>& martingale);

std::string_view to_string(LiftKind kind) noexcept;
std::string_view to_string(MonotonicityKind kind) noexcept;

}  // namespace shadow_transport
