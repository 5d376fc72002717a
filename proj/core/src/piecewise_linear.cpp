#include "shadow_transport/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shadow_transport/error.hpp"
#include "shadow_transport/tolerances.hpp"

namespace shadow_transport {

PiecewiseLinear::PiecewiseLinear(std::vector<double> breakpoints, std::vector<double> values, double left_slope,
                                 double right_slope)
    : xs_(std::move(breakpoints)), ys_(std::move(values)), left_slope_(left_slope), right_slope_(right_slope) {
    if (xs_.size() != ys_.size()) {
        throw Error(ErrorCode::InternalInvariant, "breakpoint/value size mismatch");
    }
    if (!std::isfinite(left_slope_) || !std::isfinite(right_slope_)) {
        throw Error(ErrorCode::NonFiniteInput, "non-finite tail slope");
    }
    for (std::size_t i = 0; i < xs_.size(); ++i) {
        if (!std::isfinite(xs_[i]) || !std::isfinite(ys_[i])) {
            throw Error(ErrorCode::NonFiniteInput, "non-finite breakpoint or value");
        }
        if (i > 0 && !(xs_[i - 1] < xs_[i])) {
            throw Error(ErrorCode::InternalInvariant, "breakpoints must be strictly increasing");
        }
    }
    if (xs_.empty() && left_slope_ != right_slope_) {
        throw Error(ErrorCode::InternalInvariant, "a line needs equal tail slopes");
    }
}

PiecewiseLinear PiecewiseLinear::line(double intercept, double slope) {
    PiecewiseLinear f({}, {}, slope, slope);
    f.intercept_ = intercept;
    return f;
}

double PiecewiseLinear::operator()(double x) const {
    if (xs_.empty()) return intercept_ + left_slope_ * x;
    if (x <= xs_.front()) return ys_.front() + left_slope_ * (x - xs_.front());
    if (x >= xs_.back()) return ys_.back() + right_slope_ * (x - xs_.back());
    const auto hi = static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin());
    const std::size_t lo = hi - 1;
    const double t = (x - xs_[lo]) / (xs_[hi] - xs_[lo]);
    return ys_[lo] + t * (ys_[hi] - ys_[lo]);
}

std::vector<double> PiecewiseLinear::piece_slopes() const {
    std::vector<double> s;
    s.reserve(xs_.size() + 1);
    s.push_back(left_slope_);
    for (std::size_t i = 1; i < xs_.size(); ++i) s.push_back((ys_[i] - ys_[i - 1]) / (xs_[i] - xs_[i - 1]));
    if (!xs_.empty()) s.push_back(right_slope_);
    return s;
}

double PiecewiseLinear::scale() const {
    double s = 1.0;
    for (double y : ys_) s = std::max(s, std::abs(y));
    for (double d : piece_slopes()) s = std::max(s, std::abs(d));
    if (xs_.empty()) s = std::max(s, std::abs(intercept_));
    return s;
}

namespace {

// Index of the breakpoint matching x within the position tolerance, or -1.
std::ptrdiff_t breakpoint_index(const std::vector<double>& xs, double x) {
    const Tolerances& tol = tolerances();
    auto it = std::lower_bound(xs.begin(), xs.end(), x);
    if (it != xs.end() && tol.same_position(*it, x)) return it - xs.begin();
    if (it != xs.begin() && tol.same_position(*std::prev(it), x)) return std::prev(it) - xs.begin();
    return -1;
}

bool same_slope(double a, double b) {
    return std::abs(a - b) <= tolerances().slope * (1.0 + std::max(std::abs(a), std::abs(b)));
}

}  // namespace

double right_slope(const PiecewiseLinear& f, double x) {
    const auto& xs = f.breakpoints();
    if (xs.empty()) return f.left_slope();
    const auto slopes = f.piece_slopes();  // slopes[i] is the piece left of breakpoint i
    const std::ptrdiff_t at = breakpoint_index(xs, x);
    if (at >= 0) return slopes[static_cast<std::size_t>(at) + 1];
    const auto idx = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
    return slopes[idx];
}

double left_slope(const PiecewiseLinear& f, double x) {
    const auto& xs = f.breakpoints();
    if (xs.empty()) return f.left_slope();
    const auto slopes = f.piece_slopes();
    const std::ptrdiff_t at = breakpoint_index(xs, x);
    if (at >= 0) return slopes[static_cast<std::size_t>(at)];
    const auto idx = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
    return slopes[idx];
}

PiecewiseLinear prune_collinear(const PiecewiseLinear& f) {
    const auto& xs = f.breakpoints();
    const auto& ys = f.values();
    if (xs.empty()) return f;

    std::vector<double> kx;
    std::vector<double> ky;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double in = kx.empty() ? f.left_slope() : (ys[i] - ky.back()) / (xs[i] - kx.back());
        const double out = i + 1 < xs.size() ? (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]) : f.right_slope();
        if (same_slope(in, out)) continue;
        kx.push_back(xs[i]);
        ky.push_back(ys[i]);
    }
    if (kx.empty()) return PiecewiseLinear::line(ys.front() - f.left_slope() * xs.front(), f.left_slope());
    return PiecewiseLinear(std::move(kx), std::move(ky), f.left_slope(), f.right_slope());
}

PiecewiseLinear combine(double a, const PiecewiseLinear& f, double b, const PiecewiseLinear& g) {
    const Tolerances& tol = tolerances();
    std::vector<double> xs;
    xs.reserve(f.breakpoints().size() + g.breakpoints().size());
    std::merge(f.breakpoints().begin(), f.breakpoints().end(), g.breakpoints().begin(), g.breakpoints().end(),
               std::back_inserter(xs));
    std::vector<double> merged;
    merged.reserve(xs.size());
    for (double x : xs) {
        if (merged.empty() || !tol.same_position(merged.back(), x)) merged.push_back(x);
    }
    const double ls = a * f.left_slope() + b * g.left_slope();
    const double rs = a * f.right_slope() + b * g.right_slope();
    if (merged.empty()) return PiecewiseLinear::line(a * f(0.0) + b * g(0.0), ls);

    std::vector<double> ys;
    ys.reserve(merged.size());
    for (double x : merged) ys.push_back(a * f(x) + b * g(x));
    return prune_collinear(PiecewiseLinear(std::move(merged), std::move(ys), ls, rs));
}

PiecewiseLinear operator+(const PiecewiseLinear& f, const PiecewiseLinear& g) { return combine(1.0, f, 1.0, g); }

PiecewiseLinear operator-(const PiecewiseLinear& f, const PiecewiseLinear& g) { return combine(1.0, f, -1.0, g); }

PiecewiseLinear convex_hull(const PiecewiseLinear& f) {
    double ls = f.left_slope();
    double rs = f.right_slope();
    if (f.is_line()) return f;
    if (ls > rs) {
        if (!same_slope(ls, rs)) {
            throw Error(ErrorCode::UnboundedBelow, "left tail slope " + std::to_string(ls) +
                                                       " exceeds right tail slope " + std::to_string(rs));
        }
        rs = ls;
    }

    const auto& xs = f.breakpoints();
    const auto& ys = f.values();
    const std::size_t n = xs.size();

    // The hull leaves the left ray at the last minimiser of y - ls*x and joins
    // the right ray at the first minimiser of y - rs*x; in between it is the
    // lower convex chain of the breakpoints.
    std::size_t first = 0;
    std::size_t last = 0;
    double best_left = ys[0] - ls * xs[0];
    double best_right = ys[0] - rs * xs[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double vl = ys[i] - ls * xs[i];
        const double vr = ys[i] - rs * xs[i];
        if (vl <= best_left) {
            best_left = vl;
            first = i;
        }
        if (vr < best_right) {
            best_right = vr;
            last = i;
        }
    }
    if (first > last) {
        // Only reachable when the tail slopes coincide: the hull is a line.
        return PiecewiseLinear::line(ys[first] - ls * xs[first], ls);
    }

    std::vector<double> hx;
    std::vector<double> hy;
    for (std::size_t i = first; i <= last; ++i) {
        while (hx.size() >= 2) {
            const std::size_t k = hx.size();
            const double cross =
                (hx[k - 1] - hx[k - 2]) * (ys[i] - hy[k - 2]) - (hy[k - 1] - hy[k - 2]) * (xs[i] - hx[k - 2]);
            if (cross > 0.0) break;
            hx.pop_back();
            hy.pop_back();
        }
        hx.push_back(xs[i]);
        hy.push_back(ys[i]);
    }
    return prune_collinear(PiecewiseLinear(std::move(hx), std::move(hy), ls, rs));
}

double supremum(const PiecewiseLinear& f) {
    if (f.is_line()) return same_slope(f.left_slope(), 0.0) ? f.intercept() : kInf;
    if (f.left_slope() < 0.0 && !same_slope(f.left_slope(), 0.0)) return kInf;
    if (f.right_slope() > 0.0 && !same_slope(f.right_slope(), 0.0)) return kInf;
    return *std::max_element(f.values().begin(), f.values().end());
}

bool dominated_by(const PiecewiseLinear& f, const PiecewiseLinear& g, double tol) {
    std::vector<double> xs;
    std::merge(f.breakpoints().begin(), f.breakpoints().end(), g.breakpoints().begin(), g.breakpoints().end(),
               std::back_inserter(xs));
    if (xs.empty()) xs.push_back(0.0);
    for (double x : xs) {
        if (f(x) > g(x) + tol) return false;
    }
    // Left of every breakpoint f - g has slope f.l - g.l; going left it must not grow.
    if (f.left_slope() < g.left_slope() && !same_slope(f.left_slope(), g.left_slope())) return false;
    if (f.right_slope() > g.right_slope() && !same_slope(f.right_slope(), g.right_slope())) return false;
    return true;
}

TailedMeasure measure_from_convex(const PiecewiseLinear& f) {
    const Tolerances& tol = tolerances();
    TailedMeasure out;
    out.left_slope = f.left_slope();
    out.right_slope = f.right_slope();
    if (f.is_line()) {
        out.intercept = f.intercept();
        return out;
    }
    const auto& xs = f.breakpoints();
    const auto slopes = f.piece_slopes();
    const double limit = tol.convexity * f.scale();
    std::vector<Atom> atoms;
    atoms.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double jump = slopes[i + 1] - slopes[i];
        if (jump < -limit) {
            throw Error(ErrorCode::NotConvex,
                        "slope decreases by " + std::to_string(-jump) + " at " + std::to_string(xs[i]));
        }
        if (jump > 0.0) atoms.push_back({xs[i], jump});
    }
    out.body = DiscreteMeasure(std::move(atoms));
    out.intercept = f.values().front() - f.left_slope() * xs.front();
    return out;
}

}  // namespace shadow_transport
