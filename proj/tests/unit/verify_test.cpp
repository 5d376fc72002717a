#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "shadow_transport/coupling.hpp"
#include "shadow_transport/error.hpp"
#include "shadow_transport/potentials.hpp"
#include "shadow_transport/simplex.hpp"
#include "shadow_transport/verify.hpp"

using namespace shadow_transport;

namespace {

DiscreteMeasure m(std::vector<Atom> atoms) { return make_measure(std::move(atoms)); }

// Brute force over all vertices of {x >= 0, A x = b} for tiny problems.
double enumerate_vertices(const LinearProgram& lp) {
    const std::size_t n = lp.cost.size();
    const std::size_t rows = lp.a_eq.size();
    double best = INFINITY;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<std::size_t> basis;
        for (std::size_t j = 0; j < n; ++j) {
            if (mask & (1u << j)) basis.push_back(j);
        }
        if (basis.size() != rows) continue;
        // Gaussian elimination on the square basis system
        std::vector<std::vector<double>> a(rows, std::vector<double>(rows + 1));
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t k = 0; k < rows; ++k) a[i][k] = lp.a_eq[i][basis[k]];
            a[i][rows] = lp.b_eq[i];
        }
        bool singular = false;
        for (std::size_t c = 0; c < rows && !singular; ++c) {
            std::size_t p = c;
            for (std::size_t i = c; i < rows; ++i) {
                if (std::abs(a[i][c]) > std::abs(a[p][c])) p = i;
            }
            if (std::abs(a[p][c]) < 1e-12) {
                singular = true;
                break;
            }
            std::swap(a[p], a[c]);
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == c) continue;
                const double f = a[i][c] / a[c][c];
                for (std::size_t k = c; k <= rows; ++k) a[i][k] -= f * a[c][k];
            }
        }
        if (singular) continue;
        double value = 0.0;
        bool feasible = true;
        for (std::size_t k = 0; k < rows; ++k) {
            const double x = a[k][rows] / a[k][k];
            if (x < -1e-12) feasible = false;
            value += lp.cost[basis[k]] * x;
        }
        if (feasible) best = std::min(best, value);
    }
    return best;
}

}  // namespace

TEST(Simplex, SmallProblems) {
    // min -x - y, x + y + s = 1 -> -1
    LinearProgram a{{-1, -1}, {}, {}, {{1, 1}}, {1}};
    const LpSolution sa = solve_lp(a);
    ASSERT_EQ(sa.status, LpStatus::Optimal);
    EXPECT_NEAR(sa.objective, -1.0, 1e-12);
    EXPECT_LE(sa.duality_gap, 1e-12);

    LinearProgram infeasible{{1}, {{1}}, {-1}, {}, {}};
    EXPECT_EQ(solve_lp(infeasible).status, LpStatus::Infeasible);

    LinearProgram unbounded{{-1, 0}, {{1, -1}}, {0}, {}, {}};
    EXPECT_EQ(solve_lp(unbounded).status, LpStatus::Unbounded);

    // redundant equality rows
    LinearProgram redundant{{1, 2}, {{1, 1}, {2, 2}}, {1, 2}, {}, {}};
    const LpSolution sr = solve_lp(redundant);
    ASSERT_EQ(sr.status, LpStatus::Optimal);
    EXPECT_NEAR(sr.objective, 1.0, 1e-12);
    EXPECT_NEAR(sr.x[0], 1.0, 1e-12);
}

TEST(Simplex, MatchesVertexEnumeration) {
    std::mt19937_64 rng(81);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.1, 1.0);
    for (int t = 0; t < 200; ++t) {
        const std::size_t rows = 1 + t % 3;
        const std::size_t n = rows + 1 + t % 4;
        LinearProgram lp;
        for (std::size_t j = 0; j < n; ++j) lp.cost.push_back(d(rng));
        // a positive feasible point keeps the problem feasible
        std::vector<double> x0(n);
        for (double& x : x0) x = pos(rng);
        for (std::size_t i = 0; i < rows; ++i) {
            std::vector<double> row(n);
            for (double& v : row) v = d(rng);
            double b = 0.0;
            for (std::size_t j = 0; j < n; ++j) b += row[j] * x0[j];
            lp.a_eq.push_back(row);
            lp.b_eq.push_back(b);
        }
        // a bound row keeps it bounded
        lp.a_eq.push_back(std::vector<double>(n, 1.0));
        double total = 0.0;
        for (double x : x0) total += x;
        lp.b_eq.push_back(total);
        const LpSolution s = solve_lp(lp);
        ASSERT_EQ(s.status, LpStatus::Optimal);
        EXPECT_NEAR(s.objective, enumerate_vertices(lp), 1e-9) << "trial " << t;
        EXPECT_LE(s.duality_gap, 1e-9);
        EXPECT_LE(s.dual_infeasibility, 1e-9);
        for (double x : s.x) EXPECT_GE(x, -1e-12);
    }
}

TEST(LpMinCost, Examples) {
    const CostFunction cost = spence_mirrlees_cost();
    const LpResult a = lp_min_cost(m({{0, 0.5}, {1, 0.5}}), m({{-1, 0.5}, {0, 0.5}}), cost);
    ASSERT_EQ(a.status, LpStatus::Optimal);
    EXPECT_NEAR(a.value, 0.5, 1e-12);
    EXPECT_NEAR(a.coupling.weight(1, 0), 0.5, 1e-12);
    EXPECT_NEAR(a.coupling.weight(0, -1), 0.5, 1e-12);

    EXPECT_EQ(lp_min_cost(DiscreteMeasure::point(0), DiscreteMeasure::point(1), cost).status, LpStatus::Infeasible);

    const LpResult c = lp_min_cost(DiscreteMeasure::point(0), m({{-1, 0.5}, {1, 0.5}}), cost);
    ASSERT_EQ(c.status, LpStatus::Optimal);
    EXPECT_NEAR(c.value, 0.0, 1e-12);
}

TEST(LpMinCost, SizeCap) {
    const auto [mu, nu] = random_instance(3, 6, 6, InstanceKind::GeneralCd);
    try {
        lp_min_cost(mu, nu, spence_mirrlees_cost(), 10);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SizeCap);
    }
}

TEST(Cost, Examples) {
    const CostFunction c = spence_mirrlees_cost();
    EXPECT_DOUBLE_EQ(c(2.0, 0.0), 2.0);
    EXPECT_DOUBLE_EQ(c(1.0, 1.0), std::exp(-1.0));
    EXPECT_TRUE(c.cross_difference_decreasing);
    EXPECT_TRUE(c.cross_difference_convex);
    const CostFunction g = spence_mirrlees_cost([](double x) { return x * x * x; }, 2.0);
    EXPECT_DOUBLE_EQ(g(2.0, 0.5), 8.0 * std::exp(-1.0));

    const DiscreteCoupling pi({{0, -1, 0.5}, {1, 0, 0.5}});
    EXPECT_DOUBLE_EQ(coupling_cost(pi, c), 0.5);
}

TEST(LpMinCost, DecreasingCouplingIsOptimal) {
    const CostFunction cost = spence_mirrlees_cost();
    for (std::uint64_t seed = 100; seed < 160; ++seed) {
        const auto [mu, nu] = random_instance(seed, 1 + seed % 6, 1 + (seed / 6) % 6, InstanceKind::GeneralCd);
        const LpResult lp = lp_min_cost(mu, nu, cost);
        ASSERT_EQ(lp.status, LpStatus::Optimal);
        const DiscreteCoupling pi = pi_decreasing(mu, nu).coupling;
        EXPECT_NEAR(coupling_cost(pi, cost), lp.value, 1e-7 * (1 + std::abs(lp.value))) << "seed " << seed;
        EXPECT_LE(max_cell_gap(pi, lp.coupling), 1e-6) << "seed " << seed;
    }
}

TEST(ShadowPutOracle, Examples) {
    const auto mu = m({{0, 0.5}});
    const auto nu = m({{-1, 0.5}, {1, 0.5}});
    EXPECT_NEAR(shadow_put_oracle(mu, nu, 0.0), 0.25, 1e-12);
    EXPECT_NEAR(shadow_put_oracle(mu, nu, -1.0), 0.0, 1e-12);
    EXPECT_NEAR(shadow_put_oracle(mu, nu, 1.0), 0.5, 1e-12);
    EXPECT_THROW(shadow_put_oracle(m({{2, 1}}), m({{0, 0.5}}), 0.0), Error);
}

TEST(RandomInstance, DeterministicAndOrdered) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        for (auto kind : {InstanceKind::GeneralCd, InstanceKind::EqualMeans}) {
            const auto [mu, nu] = random_instance(seed, 1 + seed % 6, 1 + seed % 5, kind);
            const auto [mu2, nu2] = random_instance(seed, 1 + seed % 6, 1 + seed % 5, kind);
            EXPECT_EQ(mu, mu2);
            EXPECT_EQ(nu, nu2);
            EXPECT_NEAR(mu.mass(), 1.0, 1e-12);
            EXPECT_NEAR(nu.mass(), 1.0, 1e-12);
            EXPECT_LE(mu.size(), 1 + seed % 6);
            EXPECT_LE(nu.size(), 1 + seed % 5);
            EXPECT_TRUE(order_check(OrderRelation::CD, mu, nu));
            for (const Atom& a : nu.atoms()) {
                EXPECT_NEAR(a.x * 100, std::round(a.x * 100), 1e-9);
                EXPECT_LE(std::abs(a.x), 2.0 + 1e-12);
            }
            if (kind == InstanceKind::EqualMeans) {
                EXPECT_NEAR(mu.mean(), nu.mean(), 1e-12);
                EXPECT_TRUE(order_check(OrderRelation::C, mu, nu));
            }
        }
    }
}

TEST(RandomInstance, SeedsDiffer) {
    const auto a = random_instance(1, 4, 4, InstanceKind::GeneralCd);
    const auto b = random_instance(2, 4, 4, InstanceKind::GeneralCd);
    EXPECT_FALSE(a.first == b.first && a.second == b.second);
}

TEST(RandomInstance, RejectsOversizedTargets) {
    EXPECT_THROW(random_instance(1, 3, 402, InstanceKind::GeneralCd), Error);
    EXPECT_EQ(random_instance(1, 3, 401, InstanceKind::GeneralCd).second.size(), 401u);
}
