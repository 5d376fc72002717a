#pragma once

#include <vector>

#include "shadow_transport/coupling_types.hpp"
#include "shadow_transport/measure.hpp"

namespace shadow_transport {

/// Finite target set: the support of a discrete measure.
class TargetSet {
public:
    /// Sorts and de-duplicates; throws OutOfRange when empty.
    explicit TargetSet(std::vector<double> points);
    static TargetSet support_of(const DiscreteMeasure& m);

    const std::vector<double>& points() const noexcept { return points_; }
    double min() const { return points_.front(); }
    double max() const { return points_.back(); }

private:
    std::vector<double> points_;
};

/// The two-point law chi_{c,x,d}: mass (d-x)/(d-c) at c and (x-c)/(d-c) at d.
/// c == d means a point mass; d == +inf means the pure down-move delta_c.
struct TwoPointKernel {
    double x = 0.0;
    double lower = 0.0;
    double upper = 0.0;

    double lower_weight() const;
    double upper_weight() const;
    bool is_point() const { return lower == upper; }
    bool is_down_move() const { return upper == kInf; }
    double mean() const;
    DiscreteMeasure law() const;
};

/// Kellerer dilation adapted to supermartingales. x within the position
/// tolerance of a target point counts as a member of T.
/// Throws BelowSupport when x < min(T).
TwoPointKernel dilate(const TargetSet& targets, double x);

/// Image of mu under the dilation. Throws BelowSupport.
DiscreteMeasure hitting_projection(const DiscreteMeasure& mu, const TargetSet& targets);

/// Product-form coupling of mu with its hitting projection.
DiscreteCoupling hitting_coupling(const DiscreteMeasure& mu, const TargetSet& targets);

}  // namespace shadow_transport
