#pragma once

// Independent reference computations used by the tests. Nothing here calls
// the library's algorithms beyond reading measure atoms and evaluating PWLs.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "shadow_transport/measure.hpp"
#include "shadow_transport/piecewise_linear.hpp"

namespace oracle {

using shadow_transport::Atom;
using shadow_transport::DiscreteMeasure;
using shadow_transport::PiecewiseLinear;

inline double put(const DiscreteMeasure& m, double k) {
    double s = 0.0;
    for (const Atom& a : m.atoms()) s += a.w * std::max(k - a.x, 0.0);
    return s;
}

inline double call(const DiscreteMeasure& m, double k) {
    double s = 0.0;
    for (const Atom& a : m.atoms()) s += a.w * std::max(a.x - k, 0.0);
    return s;
}

inline double cdf(const DiscreteMeasure& m, double x) {
    double s = 0.0;
    for (const Atom& a : m.atoms()) {
        if (a.x <= x) s += a.w;
    }
    return s;
}

// W1 = integral of |F_a - F_b| over the line; both CDFs are step functions
// with jumps at atoms only.
inline double wasserstein1(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    std::vector<double> xs = a.positions();
    const std::vector<double> bs = b.positions();
    xs.insert(xs.end(), bs.begin(), bs.end());
    std::sort(xs.begin(), xs.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        total += std::abs(oracle::cdf(a, xs[i]) - oracle::cdf(b, xs[i])) * (xs[i + 1] - xs[i]);
    }
    return total;
}

// Convex hull at y as the infimum over chords between breakpoints that
// straddle y, together with the rays that chords to +/- infinity converge to.
inline double hull_at(const PiecewiseLinear& f, double y) {
    std::vector<double> pts = f.breakpoints();
    pts.push_back(y);
    double best = f(y);
    for (double a : pts) {
        if (a > y) continue;
        best = std::min(best, f(a) + f.right_slope() * (y - a));
        for (double b : pts) {
            if (b < y || b <= a) continue;
            best = std::min(best, f(a) + (f(b) - f(a)) / (b - a) * (y - a));
        }
    }
    for (double b : pts) {
        if (b >= y) best = std::min(best, f(b) + f.left_slope() * (y - b));
    }
    return best;
}

inline double max_abs(const DiscreteMeasure& m) {
    double s = 0.0;
    for (const Atom& a : m.atoms()) s = std::max(s, std::abs(a.x));
    return s;
}

// Random measure with `n` atoms on a grid of step `step` in [-range, range].
inline DiscreteMeasure random_measure(std::mt19937_64& rng, std::size_t n, double mass = 1.0, double range = 3.0,
                                      double step = 0.05) {
    std::uniform_real_distribution<double> pos(-range, range);
    std::uniform_real_distribution<double> w(0.1, 1.0);
    std::vector<Atom> atoms;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        atoms.push_back({std::round(pos(rng) / step) * step, w(rng)});
        total += atoms.back().w;
    }
    for (Atom& a : atoms) a.w *= mass / total;
    return DiscreteMeasure(std::move(atoms));
}

// Random continuous PWL with `n` breakpoints.
inline PiecewiseLinear random_pwl(std::mt19937_64& rng, std::size_t n, double ls, double rs) {
    std::uniform_real_distribution<double> pos(-3.0, 3.0);
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    std::vector<double> xs;
    while (xs.size() < n) {
        const double x = std::round(pos(rng) * 20.0) / 20.0;
        if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    std::vector<double> ys(n);
    for (double& y : ys) y = val(rng);
    return PiecewiseLinear(std::move(xs), std::move(ys), ls, rs);
}

inline std::vector<double> sample_points(std::mt19937_64& rng, std::size_t n, double lo = -5.0, double hi = 5.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> out(n);
    for (double& x : out) x = d(rng);
    return out;
}

}  // namespace oracle

namespace oracle {

// A sub-measure of m with mass `target` (< mass(m)) keeping a random fraction
// of each atom.
inline DiscreteMeasure random_sub_measure(const DiscreteMeasure& m, double target, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(0.05, 1.0);
    std::vector<double> keep(m.size());
    for (double& k : keep) k = d(rng);
    auto mass_at = [&](double c) {
        double s = 0.0;
        for (std::size_t i = 0; i < m.size(); ++i) s += std::min(1.0, c * keep[i]) * m[i].w;
        return s;
    };
    double lo = 0.0;
    double hi = 1.0;
    while (mass_at(hi) < target && hi < 1e9) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mass_at(mid) < target ? lo : hi) = mid;
    }
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < m.size(); ++i) atoms.push_back({m[i].x, std::min(1.0, lo * keep[i]) * m[i].w});
    return DiscreteMeasure(std::move(atoms), 0.0);
}

}  // namespace oracle

#include "shadow_transport/verify.hpp"

namespace oracle {

// mu <=_cd nu with D = P_nu - P_mu vanishing between three blocks: an
// identity block near -20, a martingale block near -10 and a general block
// near 0, each of mass 1/3.
inline std::pair<DiscreteMeasure, DiscreteMeasure> reducible_instance(std::uint64_t seed) {
    using shadow_transport::InstanceKind;
    std::mt19937_64 rng(seed);
    auto shift = [](const DiscreteMeasure& m, double by) {
        std::vector<Atom> atoms;
        for (const Atom& a : m.atoms()) atoms.push_back({a.x + by, a.w / 3.0});
        return DiscreteMeasure(std::move(atoms));
    };
    const DiscreteMeasure same = random_measure(rng, 1 + rng() % 3, 1.0, 2.0, 0.05);
    const auto [mm, mn] = shadow_transport::random_instance(rng(), 1 + rng() % 4, 1 + rng() % 5, InstanceKind::EqualMeans);
    const auto [gm, gn] = shadow_transport::random_instance(rng(), 1 + rng() % 4, 1 + rng() % 5, InstanceKind::GeneralCd);
    return {shift(same, -20) + shift(mm, -10) + shift(gm, 0), shift(same, -20) + shift(mn, -10) + shift(gn, 0)};
}

}  // namespace oracle
