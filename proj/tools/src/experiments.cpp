#include <algorithm>
#include <cmath>
#include <random>

#include "shadow_transport/coupling.hpp"
#include "shadow_transport/shadow.hpp"
#include "shadow_transport/verify.hpp"
#include "shadow_transport_cli/cli.hpp"

namespace shadow_transport::cli {

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t between(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

// A sub-measure of m with total mass `target`, keeping a random fraction of
// each atom.
DiscreteMeasure random_sub_measure(const DiscreteMeasure& m, double target, std::mt19937_64& rng) {
    std::vector<double> keep(m.size());
    for (double& k : keep) k = 0.05 + unit(rng);
    auto mass_at = [&](double c) {
        double s = 0.0;
        for (std::size_t i = 0; i < m.size(); ++i) s += std::min(1.0, c * keep[i]) * m[i].w;
        return s;
    };
    double lo = 0.0;
    double hi = 1.0;
    while (mass_at(hi) < target && hi < 1e6) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mass_at(mid) < target ? lo : hi) = mid;
    }
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < m.size(); ++i) atoms.push_back({m[i].x, std::min(1.0, hi * keep[i]) * m[i].w});
    DiscreteMeasure sub(std::move(atoms), 0.0);
    return sub.scaled(target / sub.mass());
}

double scale_of(std::initializer_list<const DiscreteMeasure*> ms) {
    double s = 0.0;
    for (const DiscreteMeasure* m : ms) {
        if (m->empty()) continue;
        s = std::max(s, std::max(std::abs(m->min_position()), std::abs(m->max_position())) * m->mass());
    }
    return 1.0 + s;
}

}  // namespace

VerifyReport verify_experiment(std::size_t trials, std::uint64_t seed, std::size_t max_atoms) {
    VerifyReport report;
    report.trials = trials;
    const CostFunction cost = spence_mirrlees_cost();
    std::mt19937_64 rng(seed);
    max_atoms = std::max<std::size_t>(max_atoms, 1);
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t n = between(rng, 1, max_atoms);
        const std::size_t m = between(rng, 1, max_atoms);
        const std::uint64_t s = rng();
        const auto [mu, nu] = random_instance(s, n, m, InstanceKind::GeneralCd);
        try {
            const DecreasingCoupling d = pi_decreasing(mu, nu);
            const LpResult lp = lp_min_cost(mu, nu, cost);
            if (lp.status != LpStatus::Optimal) {
                report.failures.push_back({t, s, "LP status " + std::string(to_string(lp.status))});
                continue;
            }
            const double value_gap = std::abs(coupling_cost(d.coupling, cost) - lp.value);
            const double cell_gap = max_cell_gap(d.coupling, lp.coupling);
            report.max_value_gap = std::max(report.max_value_gap, value_gap);
            report.max_cell_gap = std::max(report.max_cell_gap, cell_gap);
            report.max_duality_gap = std::max(report.max_duality_gap, lp.duality_gap);
            if (value_gap > 1e-7 * (1.0 + std::abs(lp.value))) {
                report.failures.push_back({t, s, "value gap " + std::to_string(value_gap)});
            } else if (cell_gap > 1e-6) {
                report.failures.push_back({t, s, "cell gap " + std::to_string(cell_gap)});
            } else if (lp.duality_gap > 1e-9) {
                report.failures.push_back({t, s, "duality gap " + std::to_string(lp.duality_gap)});
            }
        } catch (const std::exception& e) {
            report.failures.push_back({t, s, e.what()});
        }
    }
    return report;
}

StabilityReport stability_experiment(std::size_t trials, std::uint64_t seed) {
    StabilityReport report;
    report.trials = trials;
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        const double alpha = 0.2 + 0.8 * unit(rng);
        auto [mu0, nu] = random_instance(rng(), between(rng, 1, 5), between(rng, 1, 6), InstanceKind::GeneralCd);
        auto [mu1, nu2] = random_instance(rng(), between(rng, 1, 5), between(rng, 1, 6), InstanceKind::GeneralCd);
        nu2 = nu2.scaled(nu.mass() / nu2.mass());

        DiscreteMeasure mu = random_sub_measure(mu0, alpha, rng);
        DiscreteMeasure mu_p;
        DiscreteMeasure nu_p;
        const int mode = static_cast<int>(t % 3);
        if (mode == 0) {  // everything moves
            mu_p = random_sub_measure(mu1, alpha, rng);
            nu_p = nu2;
        } else if (mode == 1) {  // same target
            mu_p = random_sub_measure(mu0, alpha, rng);
            mu_p = mu_p.scaled(mu.mass() / mu_p.mass());
            nu_p = nu;
        } else {  // same source, target pushed down
            mu_p = mu;
            nu_p = up_down(nu, nu2, UpDownMode::Down);
        }

        const double lhs = wasserstein1(shadow(mu, nu).shadow, shadow(mu_p, nu_p).shadow);
        const double w_mu = wasserstein1(mu, mu_p);
        const double w_nu = wasserstein1(nu, nu_p);
        const double rhs = w_mu + 2.0 * w_nu;
        const double scale = scale_of({&mu, &mu_p, &nu, &nu_p});
        const double slack = 1e-9 * scale;
        report.max_violation = std::max(report.max_violation, (lhs - rhs) / scale);
        if (lhs > rhs + slack) ++report.violations;
        if (mode == 1 && lhs > w_mu + slack) ++report.initial_violations;
        if (mode == 2 && lhs > 2.0 * w_nu + slack) ++report.target_violations;
        if (rhs > 0.0) report.tightness.push_back(lhs / rhs);
    }
    return report;
}

json::json to_json(const VerifyReport& r) {
    json::json failures = json::json::array();
    for (const VerifyFailure& f : r.failures) {
        failures.push_back({{"trial", f.trial}, {"seed", f.seed}, {"reason", f.reason}});
    }
    return {{"trials", r.trials},
            {"failures", std::move(failures)},
            {"max_value_gap", json::number(r.max_value_gap)},
            {"max_cell_gap", json::number(r.max_cell_gap)},
            {"max_duality_gap", json::number(r.max_duality_gap)}};
}

json::json to_json(const StabilityReport& r) {
    std::vector<double> sorted = r.tightness;
    std::sort(sorted.begin(), sorted.end());
    auto pct = [&](double p) {
        if (sorted.empty()) return json::json(nullptr);
        return json::number(sorted[static_cast<std::size_t>(p * static_cast<double>(sorted.size() - 1))]);
    };
    return {{"trials", r.trials},
            {"violations", r.violations},
            {"initial_violations", r.initial_violations},
            {"target_violations", r.target_violations},
            {"max_violation", json::number(r.max_violation)},
            {"tightness", {{"count", sorted.size()},
                           {"min", pct(0.0)},
                           {"median", pct(0.5)},
                           {"p90", pct(0.9)},
                           {"max", pct(1.0)}}}};
}

}  // namespace shadow_transport::cli
