#include "shadow_transport/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shadow_transport/error.hpp"
#include "shadow_transport/tolerances.hpp"

namespace shadow_transport {

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> raw) { normalise(std::move(raw), 0.0, true); }

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> raw, double drop_below) {
    normalise(std::move(raw), drop_below, false);
}

DiscreteMeasure DiscreteMeasure::point(double x, double w) { return DiscreteMeasure({{x, w}}); }

void DiscreteMeasure::normalise(std::vector<Atom> raw, double drop_below, bool use_default_drop) {
    const Tolerances& tol = tolerances();
    double total = 0.0;
    for (const Atom& a : raw) {
        if (!std::isfinite(a.x) || !std::isfinite(a.w)) {
            throw Error(ErrorCode::NonFiniteInput, "atom with non-finite position or weight");
        }
        if (a.w < 0.0) {
            throw Error(ErrorCode::NegativeWeight,
                        "negative weight " + std::to_string(a.w) + " at " + std::to_string(a.x));
        }
        total += a.w;
    }
    if (use_default_drop) drop_below = tol.mass * total;

    std::sort(raw.begin(), raw.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });

    // Merge runs of positions within tolerance of the run's first atom; the
    // merged position is the weight-average so exact duplicates stay exact.
    std::vector<Atom> merged;
    merged.reserve(raw.size());
    std::size_t i = 0;
    while (i < raw.size()) {
        const double anchor = raw[i].x;
        double w = 0.0;
        double wx = 0.0;
        std::size_t j = i;
        while (j < raw.size() && tol.same_position(raw[j].x, anchor)) {
            w += raw[j].w;
            wx += raw[j].w * raw[j].x;
            ++j;
        }
        double x = anchor;
        if (j - i > 1 && w > 0.0) {
            bool all_equal = true;
            for (std::size_t k = i; k < j; ++k) all_equal = all_equal && raw[k].x == anchor;
            if (!all_equal) x = wx / w;
        }
        if (w > drop_below && w > 0.0) merged.push_back({x, w});
        i = j;
    }

    atoms_ = std::move(merged);
    mass_ = 0.0;
    first_moment_ = 0.0;
    for (const Atom& a : atoms_) {
        mass_ += a.w;
        first_moment_ += a.x * a.w;
    }
}

double DiscreteMeasure::min_position() const {
    if (atoms_.empty()) throw Error(ErrorCode::OutOfRange, "empty measure has no support");
    return atoms_.front().x;
}

double DiscreteMeasure::max_position() const {
    if (atoms_.empty()) throw Error(ErrorCode::OutOfRange, "empty measure has no support");
    return atoms_.back().x;
}

double DiscreteMeasure::weight_at(double x) const {
    const Tolerances& tol = tolerances();
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                               [](const Atom& a, double v) { return a.x < v; });
    if (it != atoms_.end() && tol.same_position(it->x, x)) return it->w;
    if (it != atoms_.begin() && tol.same_position(std::prev(it)->x, x)) return std::prev(it)->w;
    return 0.0;
}

std::vector<double> DiscreteMeasure::positions() const {
    std::vector<double> xs;
    xs.reserve(atoms_.size());
    for (const Atom& a : atoms_) xs.push_back(a.x);
    return xs;
}

DiscreteMeasure DiscreteMeasure::scaled(double factor) const {
    std::vector<Atom> raw(atoms_.begin(), atoms_.end());
    for (Atom& a : raw) a.w *= factor;
    return DiscreteMeasure(std::move(raw));
}

std::pair<double, double> mass_and_mean(const DiscreteMeasure& m) { return {m.mass(), m.mean()}; }

double cdf(const DiscreteMeasure& m, double x) {
    const Tolerances& tol = tolerances();
    double f = 0.0;
    for (const Atom& a : m.atoms()) {
        if (a.x <= x || tol.same_position(a.x, x)) {
            f += a.w;
        } else {
            break;
        }
    }
    return f;
}

double quantile(const DiscreteMeasure& m, double u, QuantileSide side) {
    const double eps = tolerances().mass * std::max(m.mass(), 1.0);
    if (!(u >= -eps && u <= m.mass() + eps)) {
        throw Error(ErrorCode::OutOfRange,
                    "quantile level " + std::to_string(u) + " outside [0, " + std::to_string(m.mass()) + "]");
    }
    double cum = 0.0;
    if (side == QuantileSide::Left) {
        if (u <= 0.0) return -kInf;
        for (const Atom& a : m.atoms()) {
            cum += a.w;
            if (cum >= u - eps) return a.x;
        }
        return m.empty() ? -kInf : m.atoms().back().x;
    }
    for (const Atom& a : m.atoms()) {
        cum += a.w;
        if (cum > u + eps) return a.x;
    }
    return kInf;
}

namespace {

void require_equal_mass(const DiscreteMeasure& a, const DiscreteMeasure& b, const char* what) {
    const double scale = std::max({a.mass(), b.mass(), 1.0});
    if (std::abs(a.mass() - b.mass()) > tolerances().mass * scale) {
        throw Error(ErrorCode::MassMismatch, std::string(what) + ": masses " + std::to_string(a.mass()) +
                                                 " and " + std::to_string(b.mass()) + " differ");
    }
}

// Walks the merged quantile breakpoints of two equal-mass measures, calling
// visit(xa, xb, length) for each piece on which both quantiles are constant.
template <class Visit>
void merge_quantiles(const DiscreteMeasure& a, const DiscreteMeasure& b, Visit&& visit) {
    const auto as = a.atoms();
    const auto bs = b.atoms();
    if (as.empty() || bs.empty()) return;
    std::size_t i = 0;
    std::size_t j = 0;
    double ea = as[0].w;
    double eb = bs[0].w;
    double u = 0.0;
    while (i < as.size() && j < bs.size()) {
        const double e = std::min(ea, eb);
        if (e > u) visit(as[i].x, bs[j].x, e - u);
        u = std::max(u, e);
        const bool advance_a = ea <= e;
        const bool advance_b = eb <= e;
        if (advance_a && ++i < as.size()) ea += as[i].w;
        if (advance_b && ++j < bs.size()) eb += bs[j].w;
    }
}

}  // namespace

double wasserstein1(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    require_equal_mass(a, b, "wasserstein1");
    double total = 0.0;
    merge_quantiles(a, b, [&](double xa, double xb, double len) { total += std::abs(xa - xb) * len; });
    return total;
}

DiscreteMeasure up_down(const DiscreteMeasure& a, const DiscreteMeasure& b, UpDownMode mode) {
    require_equal_mass(a, b, "up_down");
    std::vector<Atom> raw;
    merge_quantiles(a, b, [&](double xa, double xb, double len) {
        raw.push_back({mode == UpDownMode::Up ? std::max(xa, xb) : std::min(xa, xb), len});
    });
    return DiscreteMeasure(std::move(raw));
}

DiscreteMeasure restrict(const DiscreteMeasure& m, double lo, double hi, bool include_lo, bool include_hi) {
    const Tolerances& tol = tolerances();
    std::vector<Atom> kept;
    for (const Atom& a : m.atoms()) {
        const bool at_lo = std::isfinite(lo) && tol.same_position(a.x, lo);
        const bool at_hi = std::isfinite(hi) && tol.same_position(a.x, hi);
        bool inside_lo = at_lo ? include_lo : a.x > lo;
        bool inside_hi = at_hi ? include_hi : a.x < hi;
        if (inside_lo && inside_hi) kept.push_back(a);
    }
    return DiscreteMeasure(std::move(kept), 0.0);
}

DiscreteMeasure operator+(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    std::vector<Atom> raw(a.atoms().begin(), a.atoms().end());
    raw.insert(raw.end(), b.atoms().begin(), b.atoms().end());
    return DiscreteMeasure(std::move(raw));
}

DiscreteMeasure difference(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    const Tolerances& tol = tolerances();
    const double slack = tol.convexity * std::max(a.mass(), 1.0);
    const double drop = tol.mass * std::max(a.mass(), 1.0);
    std::vector<Atom> out;
    out.reserve(a.size());
    std::size_t j = 0;
    const auto bs = b.atoms();
    for (const Atom& at : a.atoms()) {
        double w = at.w;
        while (j < bs.size() && bs[j].x < at.x && !tol.same_position(bs[j].x, at.x)) {
            if (bs[j].w > slack) {
                throw Error(ErrorCode::OrderViolation,
                            "difference: subtrahend has mass at " + std::to_string(bs[j].x) + " outside minuend");
            }
            ++j;
        }
        if (j < bs.size() && tol.same_position(bs[j].x, at.x)) {
            w -= bs[j].w;
            ++j;
        }
        if (w < -slack) {
            throw Error(ErrorCode::OrderViolation,
                        "difference: negative residual " + std::to_string(w) + " at " + std::to_string(at.x));
        }
        if (w > drop) out.push_back({at.x, w});
    }
    for (; j < bs.size(); ++j) {
        if (bs[j].w > slack) {
            throw Error(ErrorCode::OrderViolation,
                        "difference: subtrahend has mass at " + std::to_string(bs[j].x) + " outside minuend");
        }
    }
    return DiscreteMeasure(std::move(out), 0.0);
}

double max_atom_gap(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    double gap = 0.0;
    for (const Atom& at : a.atoms()) gap = std::max(gap, std::abs(at.w - b.weight_at(at.x)));
    for (const Atom& bt : b.atoms()) gap = std::max(gap, std::abs(bt.w - a.weight_at(bt.x)));
    return gap;
}

}  // namespace shadow_transport
