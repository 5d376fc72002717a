#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "shadow_transport/dilation.hpp"
#include "shadow_transport/error.hpp"
#include "shadow_transport/potentials.hpp"
#include "shadow_transport/verify.hpp"

using namespace shadow_transport;

namespace {

DiscreteMeasure m(std::vector<Atom> atoms) { return make_measure(std::move(atoms)); }

TargetSet random_targets(std::mt19937_64& rng, const DiscreteMeasure& mu, std::size_t n) {
    // at least one point at or below the lowest source
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    std::vector<double> pts{std::round((mu.min_position() - 0.5 * (1 + rng() % 3)) * 20) / 20};
    while (pts.size() < n) pts.push_back(std::round(d(rng) * 20) / 20);
    return TargetSet(pts);
}

}  // namespace

TEST(Dilate, Examples) {
    const TwoPointKernel a = dilate(TargetSet({-1, 1}), 0);
    EXPECT_EQ(a.lower, -1);
    EXPECT_EQ(a.upper, 1);
    EXPECT_EQ(a.lower_weight(), 0.5);
    EXPECT_EQ(a.upper_weight(), 0.5);
    EXPECT_EQ(a.mean(), 0.0);

    const TwoPointKernel b = dilate(TargetSet({-2, 0}), 1);
    EXPECT_TRUE(b.is_down_move());
    EXPECT_EQ(b.lower, 0);
    EXPECT_EQ(b.lower_weight(), 1.0);
    EXPECT_EQ(b.mean(), 0.0);

    const TwoPointKernel c = dilate(TargetSet({0}), 0);
    EXPECT_TRUE(c.is_point());
    EXPECT_EQ(c.lower, 0);

    const TwoPointKernel d = dilate(TargetSet({-1, 3}), 0);
    EXPECT_DOUBLE_EQ(d.lower_weight(), 0.75);
    EXPECT_DOUBLE_EQ(d.mean(), 0.0);
}

TEST(Dilate, BelowSupport) {
    try {
        dilate(TargetSet({0, 1}), -1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::BelowSupport);
    }
    EXPECT_THROW(TargetSet(std::vector<double>{}), Error);
}

TEST(HittingProjection, Examples) {
    EXPECT_EQ(max_atom_gap(hitting_projection(m({{0, 1}}), TargetSet({-1, 1})), m({{-1, 0.5}, {1, 0.5}})), 0.0);
    EXPECT_EQ(max_atom_gap(hitting_projection(m({{0, 0.5}, {2, 0.5}}), TargetSet({0})), m({{0, 1}})), 0.0);
    const auto mu = m({{-1, 0.3}, {0.5, 0.3}, {2, 0.4}});
    EXPECT_EQ(max_atom_gap(hitting_projection(mu, TargetSet({-1, 0.5, 2, 7})), mu), 0.0);
}

TEST(HittingCoupling, Examples) {
    const DiscreteCoupling a = hitting_coupling(m({{0, 1}}), TargetSet({-1, 1}));
    ASSERT_EQ(a.cells().size(), 2u);
    EXPECT_EQ(a.weight(0, -1), 0.5);
    EXPECT_EQ(a.weight(0, 1), 0.5);
    const DiscreteCoupling b = hitting_coupling(m({{0, 0.5}, {1, 0.5}}), TargetSet({0, 1}));
    EXPECT_EQ(b.weight(0, 0), 0.5);
    EXPECT_EQ(b.weight(1, 1), 0.5);
    const DiscreteCoupling c = hitting_coupling(m({{1, 1}}), TargetSet({-2, 0}));
    ASSERT_EQ(c.cells().size(), 1u);
    EXPECT_EQ(c.weight(1, 0), 1.0);
}

TEST(HittingCoupling, MarginalsMassAndMean) {
    std::mt19937_64 rng(51);
    for (int t = 0; t < 200; ++t) {
        const auto mu = oracle::random_measure(rng, 1 + t % 6);
        const TargetSet T = random_targets(rng, mu, 1 + t % 5);
        const DiscreteCoupling pi = hitting_coupling(mu, T);
        const DiscreteMeasure img = hitting_projection(mu, T);
        EXPECT_LE(max_atom_gap(pi.first_marginal(), mu), 1e-12);
        EXPECT_LE(max_atom_gap(pi.second_marginal(), img), 1e-12);
        EXPECT_NEAR(img.mass(), mu.mass(), 1e-12);
        EXPECT_LE(img.mean(), mu.mean() + 1e-12);
        EXPECT_LE(pi.max_supermartingale_violation(), 1e-12);
        for (const Atom& a : img.atoms()) {
            EXPECT_TRUE(std::find(T.points().begin(), T.points().end(), a.x) != T.points().end());
        }
    }
}

TEST(HittingCoupling, UniqueInItsPolytope) {
    std::mt19937_64 rng(52);
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        const auto mu = oracle::random_measure(rng, 1 + t % 5);
        const TargetSet T = random_targets(rng, mu, 1 + t % 5);
        const DiscreteMeasure img = hitting_projection(mu, T);
        const DiscreteCoupling expected = hitting_coupling(mu, T);
        for (int r = 0; r < 2; ++r) {
            std::vector<std::vector<double>> cost(mu.size(), std::vector<double>(img.size()));
            for (auto& row : cost) {
                for (double& v : row) v = c(rng);
            }
            const LpResult lp = lp_min_cost(mu, img, cost);
            ASSERT_EQ(lp.status, LpStatus::Optimal);
            EXPECT_LE(max_cell_gap(lp.coupling, expected), 1e-8) << "trial " << t;
        }
    }
}

TEST(HittingProjection, LipschitzInTheSource) {
    // sources on a 0.1 grid, targets on the offset grid, so shifts below 0.05
    // never cross a target and W1 moves by at most the shift
    std::mt19937_64 rng(53);
    const TargetSet T({-2.55, -1.25, -0.35, 0.45, 1.65});
    for (int t = 0; t < 50; ++t) {
        const auto mu = oracle::random_measure(rng, 1 + t % 5, 1.0, 2.0, 0.1);
        const DiscreteMeasure base = hitting_projection(mu, T);
        for (double h : {0.04, 1e-2, 1e-3, 1e-4, 1e-6, 1e-9}) {
            std::vector<Atom> moved;
            for (const Atom& a : mu.atoms()) moved.push_back({a.x + h, a.w});
            const double w = oracle::wasserstein1(hitting_projection(DiscreteMeasure(moved), T), base);
            EXPECT_LE(w, h * mu.mass() + 1e-12);
        }
    }
}
