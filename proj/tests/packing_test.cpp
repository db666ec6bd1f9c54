#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "csrange/analytics.hpp"
#include "csrange/packing.hpp"
#include "oracles.hpp"

using namespace csrange;

namespace {
constexpr double kSqrt3 = std::numbers::sqrt3;
}

TEST(HexPacking, OneLayerIsRegularHexagon) {
    const auto p = build_hex_packing(2.5, 1, {1, -1});
    ASSERT_EQ(p.points.size(), 6u);
    for (const auto& pt : p.points) {
        EXPECT_EQ(pt.ring, 1u);
        EXPECT_NEAR(distance(pt.pos, p.center), 2.5, 1e-12);
    }
}

TEST(HexPacking, TwoLayers) {
    const auto p = build_hex_packing(1.0, 2);
    EXPECT_EQ(p.points.size(), 18u);
    const auto census = layer_census(p);
    ASSERT_EQ(census.size(), 2u);
    EXPECT_EQ(census[0].count, 6u);
    EXPECT_NEAR(census[0].min_center_distance, 1.0, 1e-12);
    EXPECT_EQ(census[1].count, 12u);
    EXPECT_NEAR(census[1].min_center_distance, kSqrt3, 1e-12);
}

TEST(HexPacking, FiveLayersMatchesLatticeEnumeration) {
    const auto p = build_hex_packing(1.0, 5);
    EXPECT_EQ(p.points.size(), 90u);
    const auto ref = oracle::lattice_rings(1.0, 5);
    for (const auto& c : layer_census(p)) {
        EXPECT_EQ(c.count, ref.at(c.ring).count);
        EXPECT_NEAR(c.min_center_distance, ref.at(c.ring).min_distance, 1e-12);
    }
}

TEST(LayerCensus, RingsUpToEight) {
    const double s = 1.7;
    const auto p = build_hex_packing(s, 8);
    const auto ref = oracle::lattice_rings(s, 8);
    for (const auto& c : layer_census(p)) {
        const double n = static_cast<double>(c.ring);
        EXPECT_EQ(c.count, 6 * c.ring);
        EXPECT_EQ(ref.at(c.ring).count, 6 * c.ring);
        EXPECT_GE(c.min_center_distance, kSqrt3 / 2 * n * s - kDistanceTolerance);
        EXPECT_NEAR(c.min_center_distance, ref.at(c.ring).min_distance, 1e-9);
        // the flat-edge midpoint sits exactly at (sqrt3/2) n s only when n is even
        if (c.ring % 2 == 0) {
            EXPECT_NEAR(c.min_center_distance, kSqrt3 / 2 * n * s, 1e-9);
        }
    }
}

TEST(HexPacking, MinimumSpacingBetweenAllPoints) {
    const double s = 3.2;
    const auto p = build_hex_packing(s, 6, {10, 20});
    for (std::size_t i = 0; i < p.points.size(); ++i) {
        EXPECT_GE(distance(p.points[i].pos, p.center), s - kDistanceTolerance);
        for (std::size_t j = i + 1; j < p.points.size(); ++j) {
            EXPECT_GE(distance(p.points[i].pos, p.points[j].pos), s - kDistanceTolerance);
        }
    }
}

TEST(HexPacking, Errors) {
    EXPECT_THROW(build_hex_packing(0, 1), Error);
    EXPECT_THROW(build_hex_packing(1, 0), Error);
}

TEST(CumulativeInterference, Examples) {
    const RadioParams p{1.0, 0.0, 10, 4};
    EXPECT_EQ(cumulative_interference({0, 0}, {}, p), 0.0);
    const auto ring = build_hex_packing(1.0, 1).interferers();
    EXPECT_NEAR(cumulative_interference({0, 0}, ring, p), 6.0, 1e-12);
    const std::vector<NodePosition> bad{{0, 0}};
    EXPECT_THROW(cumulative_interference({0, 0}, bad, p), Error);
}

TEST(CumulativeInterference, LatticeStaysUnderClosedFormBound) {
    for (auto [g, a] : {std::pair{10.0, 4.0}, {10.0, 3.0}, {1.0, 2.5}, {100.0, 6.0}}) {
        for (double d_max : {1.0, 4.0}) {
            const RadioParams p{2.0, 0.0, g, a};
            const double k = packing_constant_k(g, a);
            const double ceiling = p.tx_power * std::pow(d_max, -a) / g;
            for (std::size_t layers : {1u, 2u, 5u, 20u, 50u}) {
                const auto sum = lattice_interference(k * d_max, layers, p);
                const double layered = layered_interference_bound(k * d_max, layers, a, p.tx_power);
                EXPECT_LE(sum.value, layered * (1 + 1e-12));
                EXPECT_LE(layered, ceiling * (1 + 1e-12));
                EXPECT_LE(sum.value + sum.tail_bound, ceiling * (1 + 1e-12)) << g << " " << a << " " << layers;
            }
        }
    }
}

TEST(CumulativeInterference, TailBoundCoversDroppedRings) {
    const RadioParams p{1.0, 0.0, 10, 3};
    const auto short_sum = lattice_interference(1.0, 10, p);
    const auto long_sum = lattice_interference(1.0, 120, p);
    EXPECT_GT(long_sum.value, short_sum.value);
    EXPECT_LE(long_sum.value, short_sum.value + short_sum.tail_bound);
}

TEST(BoundSlack, Examples) {
    EXPECT_NEAR(bound_slack(10, 4, 1), 180.0 / 340.0, 1e-12);
    double prev = 0.0;
    for (std::size_t layers = 1; layers <= 50; ++layers) {
        const double s = bound_slack(10, 4, layers);
        EXPECT_GE(s, prev);
        EXPECT_LE(s, 1.0);
        prev = s;
    }
    EXPECT_LT(bound_slack(10, 4, 50), 1.0);
    EXPECT_GT(bound_slack(10, 4, 50), 0.529);
}

TEST(BoundSlack, IncrementsShrink) {
    double prev_inc = INFINITY;
    double prev = bound_slack(10, 4, 1);
    for (std::size_t layers = 2; layers <= 30; ++layers) {
        const double cur = bound_slack(10, 4, layers);
        const double inc = cur - prev;
        EXPECT_GT(inc, 0.0);
        EXPECT_LT(inc, prev_inc);
        prev_inc = inc;
        prev = cur;
    }
}
