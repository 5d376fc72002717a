#include "shadow_transport/potentials.hpp"

#include <algorithm>
#include <cmath>

#include "shadow_transport/tolerances.hpp"

namespace shadow_transport {

PiecewiseLinear put_potential(const DiscreteMeasure& m) {
    if (m.empty()) return PiecewiseLinear::line(0.0, 0.0);
    std::vector<double> xs = m.positions();
    std::vector<double> ys(xs.size());
    // P at atom i: sum_{j<i} w_j (x_i - x_j), accumulated left to right.
    double mass_left = 0.0;
    double value = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0) value += mass_left * (xs[i] - xs[i - 1]);
        ys[i] = value;
        mass_left += m[i].w;
    }
    return PiecewiseLinear(std::move(xs), std::move(ys), 0.0, m.mass());
}

PiecewiseLinear call_potential(const DiscreteMeasure& m) {
    if (m.empty()) return PiecewiseLinear::line(0.0, 0.0);
    std::vector<double> xs = m.positions();
    std::vector<double> ys(xs.size());
    double mass_right = 0.0;
    double value = 0.0;
    for (std::size_t k = xs.size(); k-- > 0;) {
        if (k + 1 < xs.size()) value += mass_right * (xs[k + 1] - xs[k]);
        ys[k] = value;
        mass_right += m[k].w;
    }
    return PiecewiseLinear(std::move(xs), std::move(ys), -m.mass(), 0.0);
}

Potentials potentials(const DiscreteMeasure& m) {
    Potentials p{put_potential(m), call_potential(m), {}};
    p.u = combine(-1.0, p.call, -1.0, p.put);
    return p;
}

std::string_view to_string(OrderRelation rel) noexcept {
    switch (rel) {
        case OrderRelation::Sto: return "STO";
        case OrderRelation::C: return "C";
        case OrderRelation::CD: return "CD";
        case OrderRelation::PC: return "PC";
        case OrderRelation::PCD: return "PCD";
        case OrderRelation::Leq: return "LEQ";
    }
    return "?";
}

namespace {

double order_scale(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    double s = std::max({1.0, a.mass(), b.mass()});
    for (const DiscreteMeasure* m : {&a, &b}) {
        if (!m->empty()) {
            s = std::max(s, m->mass() * std::max(std::abs(m->min_position()), std::abs(m->max_position())));
        }
    }
    return s;
}

bool equal_mass(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    return std::abs(a.mass() - b.mass()) <= tolerances().convexity * std::max({1.0, a.mass(), b.mass()});
}

bool puts_dominated(const DiscreteMeasure& a, const DiscreteMeasure& b, double tol) {
    return dominated_by(put_potential(a), put_potential(b), tol);
}

bool stochastic(const DiscreteMeasure& a, const DiscreteMeasure& b, double tol) {
    if (!equal_mass(a, b)) return false;
    std::vector<double> xs = a.positions();
    const std::vector<double> bx = b.positions();
    xs.insert(xs.end(), bx.begin(), bx.end());
    for (double x : xs) {
        if (cdf(a, x) < cdf(b, x) - tol) return false;
    }
    return true;
}

bool dominated_atomwise(const DiscreteMeasure& a, const DiscreteMeasure& b, double tol) {
    return std::all_of(a.atoms().begin(), a.atoms().end(),
                       [&](const Atom& at) { return at.w <= b.weight_at(at.x) + tol; });
}

}  // namespace

bool order_check(OrderRelation rel, const DiscreteMeasure& a, const DiscreteMeasure& b) {
    const Tolerances& tol = tolerances();
    const double scale = order_scale(a, b);
    const double value_tol = tol.convexity * scale;
    const double mass_tol = tol.convexity * std::max({1.0, a.mass(), b.mass()});
    switch (rel) {
        case OrderRelation::Sto:
            return stochastic(a, b, mass_tol);
        case OrderRelation::CD:
            return equal_mass(a, b) && puts_dominated(a, b, value_tol);
        case OrderRelation::C:
            return equal_mass(a, b) && std::abs(a.mean() - b.mean()) <= value_tol && puts_dominated(a, b, value_tol);
        case OrderRelation::PCD:
            return a.mass() <= b.mass() + mass_tol && puts_dominated(a, b, value_tol);
        case OrderRelation::PC:
            return puts_dominated(a, b, value_tol) &&
                   dominated_by(call_potential(a), call_potential(b), value_tol);
        case OrderRelation::Leq:
            return dominated_atomwise(a, b, mass_tol);
    }
    return false;
}

}  // namespace shadow_transport
