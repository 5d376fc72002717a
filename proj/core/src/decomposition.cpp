#include "shadow_transport/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shadow_transport/error.hpp"
#include "shadow_transport/potentials.hpp"
#include "shadow_transport/tolerances.hpp"

namespace shadow_transport {

std::string_view to_string(ComponentKind kind) noexcept {
    switch (kind) {
        case ComponentKind::Supermartingale: return "SUPERMARTINGALE";
        case ComponentKind::Martingale: return "MARTINGALE";
        case ComponentKind::Identity: return "IDENTITY";
    }
    return "?";
}

namespace {

// Adds a boundary fragment, absorbing rounding residue.
void add_fragment(std::vector<Atom>& atoms, double x, double w, double slack) {
    if (w < -slack) {
        throw Error(ErrorCode::DecompositionFailure,
                    "negative boundary fragment " + std::to_string(w) + " at " + std::to_string(x));
    }
    if (w > slack) atoms.push_back({x, w});
}

std::vector<Atom> open_part(const DiscreteMeasure& m, double lo, double hi) {
    const DiscreteMeasure r = restrict(m, lo, hi, false, false);
    return {r.atoms().begin(), r.atoms().end()};
}

}  // namespace

Decomposition irreducible_decompose(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
    if (!order_check(OrderRelation::CD, mu, nu)) {
        throw Error(ErrorCode::OrderViolation, "decomposition requires mu <=_cd nu");
    }
    const Tolerances& tol = tolerances();
    const PiecewiseLinear d = put_potential(nu) - put_potential(mu);
    const double zero_tol = tol.convexity * std::max(1.0, put_potential(nu).scale());
    const double mass_slack = tol.convexity * std::max(1.0, nu.mass());

    std::vector<double> pts = (mu + nu).positions();
    std::vector<bool> zero(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) zero[k] = d(pts[k]) <= zero_tol;

    Decomposition out;
    const double drop = mu.mean() - nu.mean();
    const bool equal_means = drop <= zero_tol;

    // Index of the last zero at or below x*.
    std::size_t last = pts.size();
    for (std::size_t k = pts.size(); k-- > 0;) {
        if (zero[k]) {
            last = k;
            break;
        }
    }
    if (equal_means) {
        out.x_star = kInf;
    } else if (last == pts.size() || restrict(mu, -kInf, pts[last], true, true).mass() <= mass_slack) {
        out.x_star = -kInf;
    } else {
        out.x_star = pts[last];
    }

    const std::size_t end = equal_means ? pts.size() : (std::isfinite(out.x_star) ? last + 1 : 0);
    std::vector<Atom> nu_used;
    std::size_t k = 0;
    while (k < end) {
        if (!zero[k]) {  // cannot happen: pts[0] is always a zero of D
            throw Error(ErrorCode::DecompositionFailure, "D positive at the leftmost atom");
        }
        // Identity run [pts[k], pts[r]].
        std::size_t r = k;
        while (r + 1 < end && zero[r + 1]) ++r;
        const DiscreteMeasure mid = restrict(mu, pts[k], pts[r], true, true);
        if (mid.mass() > mass_slack) {
            out.components.push_back({pts[k], pts[r], ComponentKind::Identity, mid, mid});
            nu_used.insert(nu_used.end(), mid.atoms().begin(), mid.atoms().end());
        }
        if (r + 1 >= end) break;
        // Martingale component up to the next zero.
        std::size_t n = r + 1;
        while (!zero[n]) ++n;
        const double a = pts[r];
        const double b = pts[n];
        const DiscreteMeasure mu_k = restrict(mu, a, b, false, false);
        std::vector<Atom> nu_k = open_part(nu, a, b);
        const DiscreteMeasure inner(nu_k, 0.0);
        const double m_rem = mu_k.mass() - inner.mass();
        const double s_rem = mu_k.mean() - inner.mean();
        const double beta = (s_rem - a * m_rem) / (b - a);
        add_fragment(nu_k, a, m_rem - beta, mass_slack);
        add_fragment(nu_k, b, beta, mass_slack);
        DiscreteMeasure nu_piece(std::move(nu_k), 0.0);
        nu_used.insert(nu_used.end(), nu_piece.atoms().begin(), nu_piece.atoms().end());
        out.components.push_back({a, b, ComponentKind::Martingale, mu_k, std::move(nu_piece)});
        k = n;
    }

    if (!equal_means) {
        const double lo = out.x_star;
        DiscreteMeasure mu_0 = std::isfinite(lo) ? restrict(mu, lo, kInf, false, false) : mu;
        std::vector<Atom> nu_0;
        if (std::isfinite(lo)) {
            nu_0 = open_part(nu, lo, kInf);
            add_fragment(nu_0, lo, mu_0.mass() - DiscreteMeasure(nu_0, 0.0).mass(), mass_slack);
        } else {
            nu_0.assign(nu.atoms().begin(), nu.atoms().end());
        }
        DiscreteMeasure nu_piece(std::move(nu_0), 0.0);
        nu_used.insert(nu_used.end(), nu_piece.atoms().begin(), nu_piece.atoms().end());
        out.components.push_back({lo, kInf, ComponentKind::Supermartingale, std::move(mu_0), std::move(nu_piece)});
    }

    // Post-verification: the pieces reassemble nu and are ordered.
    const double gap = max_atom_gap(DiscreteMeasure(std::move(nu_used), 0.0), nu);
    if (gap > 1e-9 * std::max(1.0, nu.mass())) {
        throw Error(ErrorCode::DecompositionFailure, "components do not reassemble nu (gap " + std::to_string(gap) + ")");
    }
    for (const Component& c : out.components) {
        const OrderRelation rel = c.kind == ComponentKind::Supermartingale ? OrderRelation::CD : OrderRelation::C;
        if (!order_check(rel, c.mu, c.nu)) {
            throw Error(ErrorCode::DecompositionFailure,
                        std::string("component on (") + std::to_string(c.lo) + ", " + std::to_string(c.hi) +
                            ") fails its order check");
        }
    }
    std::sort(out.components.begin(), out.components.end(),
              [](const Component& a, const Component& b) { return a.lo < b.lo; });
    return out;
}

}  // namespace shadow_transport
