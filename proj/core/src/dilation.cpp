#include "shadow_transport/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "shadow_transport/error.hpp"
#include "shadow_transport/tolerances.hpp"

namespace shadow_transport {

DiscreteCoupling::DiscreteCoupling(std::vector<Cell> cells) {
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    const Tolerances& tol = tolerances();
    for (const Cell& c : cells) {
        if (!(c.w > 0.0)) continue;
        if (!cells_.empty() && tol.same_position(cells_.back().x, c.x) && tol.same_position(cells_.back().y, c.y)) {
            cells_.back().w += c.w;
        } else {
            cells_.push_back(c);
        }
    }
}

DiscreteMeasure DiscreteCoupling::first_marginal() const {
    std::vector<Atom> raw;
    raw.reserve(cells_.size());
    for (const Cell& c : cells_) raw.push_back({c.x, c.w});
    return DiscreteMeasure(std::move(raw), 0.0);
}

DiscreteMeasure DiscreteCoupling::second_marginal() const {
    std::vector<Atom> raw;
    raw.reserve(cells_.size());
    for (const Cell& c : cells_) raw.push_back({c.y, c.w});
    return DiscreteMeasure(std::move(raw), 0.0);
}

double DiscreteCoupling::weight(double x, double y) const {
    const Tolerances& tol = tolerances();
    double w = 0.0;
    for (const Cell& c : cells_) {
        if (tol.same_position(c.x, x) && tol.same_position(c.y, y)) w += c.w;
    }
    return w;
}

DiscreteMeasure DiscreteCoupling::targets_from_sources_at_least(double lo) const {
    const Tolerances& tol = tolerances();
    std::vector<Atom> raw;
    for (const Cell& c : cells_) {
        if (c.x >= lo || tol.same_position(c.x, lo)) raw.push_back({c.y, c.w});
    }
    return DiscreteMeasure(std::move(raw), 0.0);
}

double DiscreteCoupling::max_supermartingale_violation() const {
    double worst = 0.0;
    std::size_t i = 0;
    while (i < cells_.size()) {
        const double x = cells_[i].x;
        double mass = 0.0;
        double moment = 0.0;
        for (; i < cells_.size() && cells_[i].x == x; ++i) {
            mass += cells_[i].w;
            moment += cells_[i].w * cells_[i].y;
        }
        worst = std::max(worst, moment - x * mass);
    }
    return worst;
}

double max_cell_gap(const DiscreteCoupling& a, const DiscreteCoupling& b) {
    double gap = 0.0;
    for (const Cell& c : a.cells()) gap = std::max(gap, std::abs(c.w - b.weight(c.x, c.y)));
    for (const Cell& c : b.cells()) gap = std::max(gap, std::abs(c.w - a.weight(c.x, c.y)));
    return gap;
}

TargetSet::TargetSet(std::vector<double> points) : points_(std::move(points)) {
    if (points_.empty()) throw Error(ErrorCode::OutOfRange, "target set must be non-empty");
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

TargetSet TargetSet::support_of(const DiscreteMeasure& m) { return TargetSet(m.positions()); }

double TwoPointKernel::lower_weight() const {
    if (is_point() || is_down_move()) return 1.0;
    return (upper - x) / (upper - lower);
}

double TwoPointKernel::upper_weight() const {
    if (is_point() || is_down_move()) return 0.0;
    return (x - lower) / (upper - lower);
}

double TwoPointKernel::mean() const {
    if (is_point() || is_down_move()) return lower;
    return lower * lower_weight() + upper * upper_weight();
}

DiscreteMeasure TwoPointKernel::law() const {
    if (is_point() || is_down_move()) return DiscreteMeasure::point(lower);
    return DiscreteMeasure({{lower, lower_weight()}, {upper, upper_weight()}});
}

TwoPointKernel dilate(const TargetSet& targets, double x) {
    const Tolerances& tol = tolerances();
    const auto& t = targets.points();
    auto it = std::lower_bound(t.begin(), t.end(), x);
    if (it != t.end() && tol.same_position(*it, x)) return {x, *it, *it};
    if (it != t.begin() && tol.same_position(*std::prev(it), x)) return {x, *std::prev(it), *std::prev(it)};
    if (it == t.begin()) {
        throw Error(ErrorCode::BelowSupport,
                    "dilation source " + std::to_string(x) + " lies below min(T) = " + std::to_string(t.front()));
    }
    const double lower = *std::prev(it);
    const double upper = it == t.end() ? kInf : *it;
    return {x, lower, upper};
}

DiscreteMeasure hitting_projection(const DiscreteMeasure& mu, const TargetSet& targets) {
    return hitting_coupling(mu, targets).second_marginal();
}

DiscreteCoupling hitting_coupling(const DiscreteMeasure& mu, const TargetSet& targets) {
    std::vector<Cell> cells;
    cells.reserve(2 * mu.size());
    for (const Atom& a : mu.atoms()) {
        const TwoPointKernel k = dilate(targets, a.x);
        cells.push_back({a.x, k.lower, a.w * k.lower_weight()});
        if (k.upper_weight() > 0.0) cells.push_back({a.x, k.upper, a.w * k.upper_weight()});
    }
    return DiscreteCoupling(std::move(cells));
}

}  // namespace shadow_transport
