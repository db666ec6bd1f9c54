#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "csrange/analytics.hpp"
#include "oracles.hpp"

using namespace csrange;

namespace {
const std::vector<double> kGammas{1, 3.16, 10, 31.6, 100};
const std::vector<double> kAlphas{2.5, 3, 4, 5, 6};
}  // namespace

TEST(PackingConstant, TypicalSetting) {
    EXPECT_NEAR(packing_constant_k(10, 4), std::pow(340.0 / 3.0, 0.25), 1e-12);
    EXPECT_NEAR(packing_constant_k(10, 4), 3.262792201236, 1e-11);
    EXPECT_NEAR(packing_constant_k(10, 4) + 2.0, 5.27, 0.01);
}

TEST(PackingConstant, HomogeneousInGamma) {
    for (double a : kAlphas) {
        for (double c : {0.1, 2.0, 50.0}) {
            EXPECT_NEAR(packing_constant_k(c * 10, a), std::pow(c, 1 / a) * packing_constant_k(10, a), 1e-12);
        }
    }
}

TEST(PackingConstant, UnitGammaEqualsLimit) {
    EXPECT_NEAR(packing_constant_k(1, 4), std::pow(34.0 / 3.0, 0.25), 1e-12);
    EXPECT_NEAR(packing_constant_k(1, 4), 1.8348, 5e-5);
}

TEST(PackingConstant, Errors) {
    try {
        packing_constant_k(10, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidExponent);
    }
    try {
        packing_constant_k(0, 4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidThreshold);
    }
    EXPECT_THROW(packing_constant_k(-1, 4), Error);
    EXPECT_THROW(packing_constant_k(10, 1.5), Error);
}

TEST(SafeRanges, Physical) {
    EXPECT_NEAR(safe_csrange_physical(10, 4, 1), 5.27, 0.01);
    EXPECT_NEAR(safe_csrange_physical(10, 4, 2), 2 * safe_csrange_physical(10, 4, 1), 1e-12);
    // alpha = 4 specialisation: 2 + (34 gamma0 / 3)^(1/4)
    EXPECT_NEAR(safe_csrange_physical(10, 4, 1), 2 + std::pow(340.0 / 3.0, 0.25), 1e-12);
    EXPECT_THROW(safe_csrange_physical(10, 4, 0), Error);
}

TEST(SafeRanges, Pairwise) {
    EXPECT_NEAR(safe_csrange_pairwise(10, 4, 1), 3.78, 0.01);
    EXPECT_NEAR(safe_csrange_pairwise(10, 4, 1), 3.778279410039, 1e-11);
    EXPECT_DOUBLE_EQ(safe_csrange_pairwise(1, 4, 1), 3.0);
    EXPECT_DOUBLE_EQ(safe_csrange_pairwise(16, 4, 1), 4.0);
    EXPECT_THROW(safe_csrange_pairwise(10, 2, 1), Error);
}

TEST(RangeRatio, Examples) {
    EXPECT_NEAR(range_ratio(10, 4), 1.392907096085, 1e-11);
    EXPECT_NEAR(range_ratio(10, 4), 1.4, 0.05);
    EXPECT_NEAR(range_ratio(1e-12, 4), 1.0, 1e-2);
    EXPECT_LT(std::fabs(range_ratio(1e-40, 4) - 1.0), 1e-9);
    const double r100 = range_ratio(100, 4);
    EXPECT_NEAR(r100, 1.511378640265, 1e-11);
    EXPECT_GT(r100, range_ratio(10, 4));
    EXPECT_LT(r100, ratio_limit(4));
}

TEST(RatioLimit, Examples) {
    EXPECT_NEAR(ratio_limit(4), 1.834802890264, 1e-11);
    EXPECT_NEAR(ratio_limit(4), 1.8348, 5e-4);
    EXPECT_LT(std::fabs(range_ratio(1e9, 4) - ratio_limit(4)), 1e-2);
    const double direct3 = std::cbrt(6 * (1 + std::pow(2 / std::sqrt(3.0), 3)));
    EXPECT_NEAR(ratio_limit(3), direct3, 1e-12);
    EXPECT_NEAR(ratio_limit(3), 2.479165752342, 1e-11);
    EXPECT_NEAR(range_ratio(1e12, 3), ratio_limit(3), 1e-3);
    EXPECT_THROW(ratio_limit(2), Error);
}

TEST(InterferenceUpperBound, ExactAtK) {
    for (double g : kGammas) {
        for (double a : kAlphas) {
            for (double d_max : {0.5, 1.0, 30.0}) {
                const double bound = interference_upper_bound(packing_constant_k(g, a), a, 2.0, d_max);
                const double target = 2.0 * std::pow(d_max, -a) / g;
                EXPECT_NEAR(bound / target, 1.0, 1e-12) << g << " " << a;
            }
        }
    }
}

TEST(InterferenceUpperBound, Examples) {
    EXPECT_NEAR(interference_upper_bound(1, 4, 1, 1), 34.0 / 3.0, 1e-12);
    EXPECT_NEAR(interference_upper_bound(2, 4, 1, 1), interference_upper_bound(1, 4, 1, 1) / 16.0, 1e-12);
    EXPECT_THROW(interference_upper_bound(1, 2, 1, 1), Error);
    EXPECT_THROW(interference_upper_bound(0, 4, 1, 1), Error);
}

TEST(ZetaTail, Examples) {
    EXPECT_DOUBLE_EQ(zeta_tail_partial_sum(4, 2), 0.125);
    const double z3 = zeta_tail_partial_sum(4, 1000000);
    EXPECT_NEAR(z3, 0.202056903159594, 1e-9);
    EXPECT_LT(z3, 0.5);
    const double z2 = zeta_tail_partial_sum(3, 1000000);
    EXPECT_NEAR(z2, 0.644934066848226, 2e-6);
    EXPECT_LT(z2, 1.0);
    EXPECT_THROW(zeta_tail_partial_sum(4, 1), Error);
    EXPECT_THROW(zeta_tail_partial_sum(2, 10), Error);
}

TEST(ZetaTail, MatchesDirectSummationAndStaysBelowBound) {
    for (double a : {2.1, 2.5, 3.0, 4.0, 6.0}) {
        for (std::uint64_t m : {2ull, 3ull, 10ull, 1000ull, 100000ull}) {
            const double v = zeta_tail_partial_sum(a, m);
            EXPECT_NEAR(v, oracle::zeta_tail(a, m), 1e-11 * std::max(1.0, v));
            EXPECT_LT(v, 1.0 / (a - 2.0));
        }
    }
}

TEST(Monotonicity, StrictlyIncreasingInGamma) {
    for (double a : {2.5, 3.0, 4.0, 6.0}) {
        const auto grid = log_grid(1e-2, 1e4, 100);
        for (std::size_t i = 1; i < grid.size(); ++i) {
            EXPECT_GT(packing_constant_k(grid[i], a), packing_constant_k(grid[i - 1], a));
            EXPECT_GT(safe_csrange_physical(grid[i], a, 1), safe_csrange_physical(grid[i - 1], a, 1));
            EXPECT_GT(safe_csrange_pairwise(grid[i], a, 1), safe_csrange_pairwise(grid[i - 1], a, 1));
            EXPECT_GT(range_ratio(grid[i], a), range_ratio(grid[i - 1], a));
        }
    }
}

TEST(Dominance, PhysicalAbovePairwiseAndRatioBelowLimit) {
    for (double a : kAlphas) {
        for (double g : log_grid(1e-3, 1e6, 60)) {
            const auto rep = range_report(g, a);
            EXPECT_GT(rep.physical_range_over_dmax, rep.pairwise_range_over_dmax);
            EXPECT_GT(rep.ratio, 1.0);
            EXPECT_LT(rep.ratio, ratio_limit(a));
        }
    }
}

TEST(RatioCurve, SinglePoint) {
    const std::vector<double> a{4}, g{10};
    const auto rows = ratio_curve(a, g);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_NEAR(rows[0].ratio, range_ratio(10, 4), 1e-15);
    EXPECT_NEAR(rows[0].ratio, 1.393, 1e-3);
    EXPECT_EQ(rows[0].limit, ratio_limit(4));
}

TEST(RatioCurve, IncreasingAndBelowLimit) {
    const std::vector<double> alphas{3, 4, 6};
    const auto gammas = log_grid(1, 1000, 50);
    const auto rows = ratio_curve(alphas, gammas);
    ASSERT_EQ(rows.size(), 150u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_LT(rows[i].ratio, rows[i].limit);
        if (i % 50 != 0) {
            EXPECT_GT(rows[i].ratio, rows[i - 1].ratio);
        }
    }
    EXPECT_THROW(ratio_curve(std::vector<double>{}, gammas), Error);
    EXPECT_THROW(ratio_curve(std::vector<double>{2.0}, gammas), Error);
}

TEST(LogGrid, Endpoints) {
    const auto g = log_grid(1, 1000, 4);
    ASSERT_EQ(g.size(), 4u);
    EXPECT_EQ(g.front(), 1.0);
    EXPECT_EQ(g.back(), 1000.0);
    EXPECT_NEAR(g[1], 10.0, 1e-12);
    EXPECT_THROW(log_grid(0, 10, 3), Error);
    EXPECT_THROW(log_grid(10, 1, 3), Error);
    EXPECT_THROW(log_grid(1, 10, 0), Error);
}
