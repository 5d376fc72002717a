#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "shadow_transport/error.hpp"
#include "shadow_transport/measure.hpp"
#include "shadow_transport/potentials.hpp"

using namespace shadow_transport;

namespace {

DiscreteMeasure m(std::vector<Atom> atoms) { return make_measure(std::move(atoms)); }

void expect_atoms(const DiscreteMeasure& got, std::vector<Atom> want, double tol = 1e-12) {
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        EXPECT_NEAR(got[i].x, want[i].x, tol) << "atom " << i;
        EXPECT_NEAR(got[i].w, want[i].w, tol) << "atom " << i;
    }
}

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InternalInvariant;
}

}  // namespace

TEST(MakeMeasure, SortsMergesAndDrops) {
    expect_atoms(m({{1, 0.5}, {0, 0.5}}), {{0, 0.5}, {1, 0.5}});
    expect_atoms(m({{0, 0.3}, {0, 0.2}}), {{0, 0.5}});
    expect_atoms(m({{0, 0.5}, {2, 0.0}}), {{0, 0.5}});
    expect_atoms(m({{1.0, 0.25}, {1.0 + 1e-15, 0.25}}), {{1.0, 0.5}});
}

TEST(MakeMeasure, RejectsBadInput) {
    EXPECT_EQ(code_of([] { m({{0, 0.5}, {1, -0.1}}); }), ErrorCode::NegativeWeight);
    EXPECT_EQ(code_of([] { m({{NAN, 0.5}}); }), ErrorCode::NonFiniteInput);
    EXPECT_EQ(code_of([] { m({{0, INFINITY}}); }), ErrorCode::NonFiniteInput);
}

TEST(MassAndMean, Examples) {
    EXPECT_EQ(mass_and_mean(m({{0, 1}})), std::make_pair(1.0, 0.0));
    EXPECT_EQ(mass_and_mean(m({{-2, 0.5}, {1, 0.5}})), std::make_pair(1.0, -0.5));
    EXPECT_EQ(mass_and_mean(DiscreteMeasure{}), std::make_pair(0.0, 0.0));
}

TEST(Cdf, RightContinuous) {
    const auto pm = m({{-1, 0.5}, {1, 0.5}});
    EXPECT_DOUBLE_EQ(cdf(pm, 0), 0.5);
    EXPECT_DOUBLE_EQ(cdf(pm, 1), 1.0);
    EXPECT_DOUBLE_EQ(cdf(m({{0, 1}}), -1), 0.0);
}

TEST(Quantile, CanonicalVersions) {
    const auto pm = m({{-1, 0.5}, {1, 0.5}});
    EXPECT_EQ(quantile(pm, 0.5, QuantileSide::Left), -1);
    EXPECT_EQ(quantile(pm, 0.5, QuantileSide::Right), 1);
    EXPECT_EQ(quantile(m({{0, 1}}), 0, QuantileSide::Left), -kInf);
    EXPECT_EQ(quantile(m({{0, 1}}), 1, QuantileSide::Right), kInf);
    EXPECT_EQ(code_of([&] { quantile(pm, 1.5, QuantileSide::Left); }), ErrorCode::OutOfRange);
    EXPECT_EQ(code_of([&] { quantile(pm, -0.1, QuantileSide::Right); }), ErrorCode::OutOfRange);
}

TEST(Quantile, GaloisInequalityAtAtoms) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        const auto mu = oracle::random_measure(rng, 1 + t % 7);
        for (const Atom& a : mu.atoms()) {
            const double f = cdf(mu, a.x);
            EXPECT_LE(quantile(mu, f, QuantileSide::Left), a.x);
            const double right = quantile(mu, f, QuantileSide::Right);
            EXPECT_GE(right, a.x);
        }
    }
}

TEST(Potentials, Examples) {
    const Potentials d0 = potentials(m({{0, 1}}));
    EXPECT_EQ(d0.put.left_slope(), 0.0);
    EXPECT_EQ(d0.put.right_slope(), 1.0);
    EXPECT_EQ(d0.put(3.0), 3.0);
    EXPECT_EQ(d0.put(-3.0), 0.0);
    EXPECT_DOUBLE_EQ(potentials(m({{-1, 0.5}, {1, 0.5}})).put(0), 0.5);
    const Potentials p = potentials(m({{-2, 0.5}, {1, 0.5}}));
    EXPECT_DOUBLE_EQ(p.call(0), 0.5);
    EXPECT_DOUBLE_EQ(p.put(0), 1.0);
    EXPECT_DOUBLE_EQ(p.u(0), -1.5);
}

TEST(Potentials, MatchDirectSumsAndParity) {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 100; ++t) {
        const auto mu = oracle::random_measure(rng, 1 + t % 8, 0.3 + 0.1 * (t % 9));
        const Potentials p = potentials(mu);
        const double scale = 1.0 + oracle::max_abs(mu) * mu.mass();
        for (double k : oracle::sample_points(rng, 20)) {
            EXPECT_NEAR(p.put(k), oracle::put(mu, k), 1e-12 * scale);
            EXPECT_NEAR(p.call(k), oracle::call(mu, k), 1e-12 * scale);
            EXPECT_NEAR(p.call(k) - p.put(k), mu.mean() - mu.mass() * k, 1e-12 * (scale + std::abs(k)));
            EXPECT_NEAR(-p.u(k), p.call(k) + p.put(k), 1e-12 * (scale + std::abs(k)));
        }
    }
}

TEST(Wasserstein, Examples) {
    EXPECT_DOUBLE_EQ(wasserstein1(m({{0, 1}}), m({{1, 1}})), 1.0);
    const auto pm = m({{-1, 0.5}, {1, 0.5}});
    EXPECT_EQ(wasserstein1(pm, pm), 0.0);
    EXPECT_DOUBLE_EQ(wasserstein1(m({{0, 1}}), pm), 1.0);
    EXPECT_EQ(code_of([&] { wasserstein1(m({{0, 1}}), m({{0, 0.5}})); }), ErrorCode::MassMismatch);
}

TEST(Wasserstein, MatchesCdfIntegralAndIsAMetric) {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 200; ++t) {
        const double mass = 0.5 + 0.25 * (t % 3);
        const auto a = oracle::random_measure(rng, 1 + t % 6, mass);
        const auto b = oracle::random_measure(rng, 1 + (t / 3) % 6, mass);
        const auto c = oracle::random_measure(rng, 1 + (t / 5) % 6, mass);
        const double ab = wasserstein1(a, b);
        EXPECT_NEAR(ab, oracle::wasserstein1(a, b), 1e-10);
        EXPECT_NEAR(ab, wasserstein1(b, a), 1e-12);
        EXPECT_LE(wasserstein1(a, c), ab + wasserstein1(b, c) + 1e-10);
    }
}

TEST(OrderCheck, Examples) {
    EXPECT_TRUE(order_check(OrderRelation::CD, m({{1, 1}}), m({{0, 1}})));
    EXPECT_FALSE(order_check(OrderRelation::CD, m({{0, 1}}), m({{1, 1}})));
    EXPECT_TRUE(order_check(OrderRelation::PCD, m({{0, 0.5}}), m({{-1, 0.5}, {1, 0.5}})));
    EXPECT_TRUE(order_check(OrderRelation::C, m({{0, 1}}), m({{-1, 0.5}, {1, 0.5}})));
    EXPECT_FALSE(order_check(OrderRelation::C, m({{1, 1}}), m({{0, 1}})));
    EXPECT_TRUE(order_check(OrderRelation::Sto, m({{0, 1}}), m({{1, 1}})));
    EXPECT_FALSE(order_check(OrderRelation::Sto, m({{1, 1}}), m({{0, 1}})));
    EXPECT_TRUE(order_check(OrderRelation::PC, m({{0, 0.5}}), m({{-1, 0.5}, {1, 0.5}})));
    EXPECT_TRUE(order_check(OrderRelation::PC, m({{1, 0.5}}), m({{-1, 0.5}, {1, 0.5}})));
    EXPECT_FALSE(order_check(OrderRelation::PC, m({{1, 0.5}}), m({{-1, 0.5}})));
    EXPECT_TRUE(order_check(OrderRelation::PCD, m({{1, 0.5}}), m({{-1, 0.5}})));
    EXPECT_TRUE(order_check(OrderRelation::Leq, m({{0, 0.25}}), m({{0, 0.5}, {1, 0.5}})));
    EXPECT_FALSE(order_check(OrderRelation::Leq, m({{0, 0.75}}), m({{0, 0.5}, {1, 0.5}})));
    // mass mismatch is a plain "no" for the equal-mass relations
    EXPECT_FALSE(order_check(OrderRelation::CD, m({{0, 0.5}}), m({{0, 1}})));
}

TEST(OrderCheck, AgreesWithDirectPutComparison) {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 200; ++t) {
        const auto a = oracle::random_measure(rng, 1 + t % 4);
        const auto b = oracle::random_measure(rng, 1 + t % 5);
        std::vector<double> ks = a.positions();
        for (double y : b.positions()) ks.push_back(y);
        bool puts = true;
        for (double k : ks) puts = puts && oracle::put(a, k) <= oracle::put(b, k) + 1e-12;
        EXPECT_EQ(order_check(OrderRelation::CD, a, b), puts);
    }
}

TEST(UpDown, Examples) {
    expect_atoms(up_down(m({{0, 1}}), m({{1, 1}}), UpDownMode::Up), {{1, 1}});
    expect_atoms(up_down(m({{-2, 0.5}, {2, 0.5}}), m({{0, 1}}), UpDownMode::Down), {{-2, 0.5}, {0, 0.5}});
    const auto x = m({{-1, 0.3}, {0.5, 0.2}, {2, 0.5}});
    expect_atoms(up_down(x, x, UpDownMode::Down), {{-1, 0.3}, {0.5, 0.2}, {2, 0.5}});
    EXPECT_EQ(code_of([&] { up_down(x, m({{0, 0.5}}), UpDownMode::Up); }), ErrorCode::MassMismatch);
}

TEST(Restrict, Examples) {
    const auto h = m({{0, 0.5}, {1, 0.5}});
    expect_atoms(restrict(h, 1, kInf, true, false), {{1, 0.5}});
    expect_atoms(restrict(h, -kInf, kInf, false, false), {{0, 0.5}, {1, 0.5}});
    EXPECT_TRUE(restrict(h, 0, 1, false, false).empty());
}

// Up/Down properties on random equal-mass pairs.
TEST(UpDownProperties, StochasticBounds) {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 200; ++t) {
        const auto a = oracle::random_measure(rng, 1 + t % 6);
        const auto b = oracle::random_measure(rng, 1 + (t / 6) % 6);
        const auto down = up_down(a, b, UpDownMode::Down);
        const auto up = up_down(a, b, UpDownMode::Up);
        EXPECT_TRUE(order_check(OrderRelation::Sto, down, a));
        EXPECT_TRUE(order_check(OrderRelation::Sto, down, b));
        EXPECT_TRUE(order_check(OrderRelation::Sto, a, up));
        EXPECT_TRUE(order_check(OrderRelation::Sto, b, up));
    }
}

TEST(UpDownProperties, WassersteinSplits) {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 200; ++t) {
        const auto a = oracle::random_measure(rng, 1 + t % 6);
        const auto b = oracle::random_measure(rng, 1 + (t / 6) % 6);
        const double scale = 1.0 + std::max(oracle::max_abs(a), oracle::max_abs(b));
        const double w = wasserstein1(a, b);
        const auto down = up_down(a, b, UpDownMode::Down);
        const auto up = up_down(a, b, UpDownMode::Up);
        EXPECT_NEAR(w, wasserstein1(a, down) + wasserstein1(b, down), 1e-10 * scale);
        EXPECT_NEAR(w, wasserstein1(a, up) + wasserstein1(b, up), 1e-10 * scale);
    }
}

TEST(UpDownProperties, PcdIsPreserved) {
    std::mt19937_64 rng(23);
    int down_cases = 0;
    int up_cases = 0;
    for (int t = 0; t < 400 && (down_cases < 200 || up_cases < 200); ++t) {
        const auto a = oracle::random_measure(rng, 1 + t % 6);
        const auto b = oracle::random_measure(rng, 1 + (t / 6) % 6);
        // A sub-measure shifted down is <=_pcd both when it is <=_pcd each.
        const auto eta = oracle::random_measure(rng, 1 + t % 3, 0.4, 3.0);
        if (order_check(OrderRelation::PCD, eta, a) && order_check(OrderRelation::PCD, eta, b)) {
            ++down_cases;
            EXPECT_TRUE(order_check(OrderRelation::PCD, eta, up_down(a, b, UpDownMode::Down)));
        }
        const auto chi = oracle::random_measure(rng, 1 + t % 5, 1.0, 4.0);
        if (order_check(OrderRelation::PCD, a, chi) && order_check(OrderRelation::PCD, b, chi)) {
            ++up_cases;
            EXPECT_TRUE(order_check(OrderRelation::PCD, up_down(a, b, UpDownMode::Up), chi));
        }
    }
    EXPECT_GT(down_cases, 10);
    EXPECT_GT(up_cases, 10);
}
