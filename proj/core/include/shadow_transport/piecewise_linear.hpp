#pragma once

#include <vector>

#include "shadow_transport/measure.hpp"

namespace shadow_transport {

/// Continuous piecewise-linear function with linear tails.
///
/// Stored as values at strictly increasing breakpoints plus the slopes of the
/// two unbounded rays, which are anchored at the first and last breakpoint.
/// A function without breakpoints is a single line.
class PiecewiseLinear {
public:
    PiecewiseLinear() = default;  // the zero line

    PiecewiseLinear(std::vector<double> breakpoints, std::vector<double> values, double left_slope,
                    double right_slope);

    static PiecewiseLinear line(double intercept, double slope);

    const std::vector<double>& breakpoints() const noexcept { return xs_; }
    const std::vector<double>& values() const noexcept { return ys_; }
    double left_slope() const noexcept { return left_slope_; }
    double right_slope() const noexcept { return right_slope_; }
    bool is_line() const noexcept { return xs_.empty(); }
    double intercept() const noexcept { return intercept_; }  // meaningful for lines only

    double operator()(double x) const;

    /// Slopes of every piece from the left ray to the right ray
    /// (breakpoints().size() + 1 entries).
    std::vector<double> piece_slopes() const;

    /// max |value| and max |slope|, floored at 1.
    double scale() const;

private:
    std::vector<double> xs_;
    std::vector<double> ys_;
    double left_slope_ = 0.0;
    double right_slope_ = 0.0;
    double intercept_ = 0.0;
};

inline double eval(const PiecewiseLinear& f, double x) { return f(x); }

double right_slope(const PiecewiseLinear& f, double x);
double left_slope(const PiecewiseLinear& f, double x);

/// a*f + b*g on the merged breakpoints, collinear breakpoints pruned.
PiecewiseLinear combine(double a, const PiecewiseLinear& f, double b, const PiecewiseLinear& g);

PiecewiseLinear operator+(const PiecewiseLinear& f, const PiecewiseLinear& g);
PiecewiseLinear operator-(const PiecewiseLinear& f, const PiecewiseLinear& g);

/// Drops breakpoints whose adjacent slopes agree within the slope tolerance.
PiecewiseLinear prune_collinear(const PiecewiseLinear& f);

/// Largest convex minorant. Throws UnboundedBelow when the left tail slope
/// exceeds the right tail slope (no affine minorant exists).
PiecewiseLinear convex_hull(const PiecewiseLinear& f);

/// sup over the real line; +inf when a tail increases without bound.
double supremum(const PiecewiseLinear& f);

/// f <= g + tol everywhere, decided at the merged breakpoints plus a
/// comparison of tail slopes (exact for piecewise-linear functions).
bool dominated_by(const PiecewiseLinear& f, const PiecewiseLinear& g, double tol);

/// Measure carried by the curvature of a convex function, together with the
/// affine part: f(k) = P_body(k) + left_slope * k + intercept.
struct TailedMeasure {
    DiscreteMeasure body;
    double left_slope = 0.0;
    double right_slope = 0.0;
    double intercept = 0.0;
};

/// Slope jumps of f as atoms. Jumps that are negative only by the convexity
/// tolerance are clamped to zero; anything worse throws NotConvex.
TailedMeasure measure_from_convex(const PiecewiseLinear& f);

}  // namespace shadow_transport
