#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "csrange/analytics.hpp"
#include "csrange/geometry.hpp"
#include "csrange/interference.hpp"

namespace csrange {

struct LatticePoint {
    NodePosition pos;
    std::size_t ring = 0;  // hexagonal layer, starting at 1
};

/// Triangular-lattice rings around a center point. Ring n holds 6n points, ring 1 sits at
/// exactly `spacing`, and every ring-n point is at least (sqrt3/2)*n*spacing from the center.
/// Points stand for zero-length interfering links, so they are raw positions, not DirectedLinks.
struct HexPacking {
    double spacing = 0.0;
    std::size_t layers = 0;
    NodePosition center;
    std::vector<LatticePoint> points;

    std::vector<NodePosition> interferers() const {
        std::vector<NodePosition> out;
        out.reserve(points.size());
        for (const auto& p : points) out.push_back(p.pos);
        return out;
    }
};

namespace detail {

// axial directions, walked in order around a ring
inline constexpr std::array<std::array<int, 2>, 6> kHexDirections{{{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};

inline NodePosition axial_to_plane(long q, long r, double spacing, const NodePosition& center) {
    const double qd = static_cast<double>(q);
    const double rd = static_cast<double>(r);
    return {center.x + spacing * (qd + 0.5 * rd), center.y + spacing * rd * std::numbers::sqrt3 / 2.0};
}

}  // namespace detail

inline HexPacking build_hex_packing(double spacing, std::size_t layers, NodePosition center = {}) {
    detail::require_positive(spacing, "spacing");
    if (layers == 0) throw Error(ErrorCode::InvalidArgument, "packing needs at least one layer");
    if (!center.finite()) throw Error(ErrorCode::InvalidArgument, "packing center must be finite");

    HexPacking p{spacing, layers, center, {}};
    p.points.reserve(3 * layers * (layers + 1));
    for (std::size_t n = 1; n <= layers; ++n) {
        const long ln = static_cast<long>(n);
        long q = detail::kHexDirections[4][0] * ln;
        long r = detail::kHexDirections[4][1] * ln;
        for (const auto& dir : detail::kHexDirections) {
            for (std::size_t step = 0; step < n; ++step) {
                p.points.push_back({detail::axial_to_plane(q, r, spacing, center), n});
                q += dir[0];
                r += dir[1];
            }
        }
    }
    return p;
}

struct RingCensus {
    std::size_t ring = 0;
    std::size_t count = 0;
    double min_center_distance = 0.0;
};

inline std::vector<RingCensus> layer_census(const HexPacking& p) {
    std::vector<RingCensus> out(p.layers);
    for (std::size_t n = 0; n < p.layers; ++n) {
        out[n] = {n + 1, 0, std::numeric_limits<double>::infinity()};
    }
    for (const auto& pt : p.points) {
        auto& c = out.at(pt.ring - 1);
        ++c.count;
        c.min_center_distance = std::min(c.min_center_distance, distance(pt.pos, p.center));
    }
    return out;
}

/// Sum of P * d^-alpha received at `victim` from every interferer position.
inline double cumulative_interference(const NodePosition& victim, std::span<const NodePosition> interferers,
                                      const RadioParams& params) {
    params.validate();
    double sum = 0.0;
    for (const auto& s : interferers) sum += path_gain(s, victim, params.path_loss_exp);
    return params.tx_power * sum;
}

/// Layer-by-layer ceiling used in the range derivation: 6 points at `spacing`, then 6n points
/// at exactly (sqrt3/2)*n*spacing for n = 2..layers. Dominates the exact lattice sum.
inline double layered_interference_bound(double spacing, std::size_t layers, double alpha, double tx_power) {
    detail::require_positive(spacing, "spacing");
    detail::require_exponent(alpha);
    double sum = 6.0 * std::pow(spacing, -alpha);
    for (std::size_t n = 2; n <= layers; ++n) {
        const double nd = static_cast<double>(n);
        sum += 6.0 * nd * std::pow(std::numbers::sqrt3 / 2.0 * nd * spacing, -alpha);
    }
    return tx_power * sum;
}

struct TruncatedSum {
    double value = 0.0;       // exact sum over the generated layers
    double tail_bound = 0.0;  // ceiling on everything beyond the last layer
};

/// Exact interference at the center of a `layers`-ring packing, plus an analytic bound on the
/// rings that were not generated: 6 P ((sqrt3/2) s)^-alpha * sum_{n>L} n^(1-alpha), the sum
/// itself bounded by L^(2-alpha)/(alpha-2).
inline TruncatedSum lattice_interference(double spacing, std::size_t layers, const RadioParams& params) {
    const auto pack = build_hex_packing(spacing, layers);
    const auto pts = pack.interferers();
    TruncatedSum out;
    out.value = cumulative_interference(pack.center, pts, params);
    const double a = params.path_loss_exp;
    const double remainder = std::pow(static_cast<double>(layers), 2.0 - a) / (a - 2.0);
    out.tail_bound = 6.0 * params.tx_power * std::pow(std::numbers::sqrt3 / 2.0 * spacing, -a) * remainder;
    return out;
}

/// Fraction of the closed-form interference ceiling P d_max^-alpha / gamma0 reached by an exact
/// `layers`-ring lattice at spacing K * d_max. Independent of P and d_max.
inline double bound_slack(double gamma0, double alpha, std::size_t layers) {
    const double k = packing_constant_k(gamma0, alpha);
    RadioParams unit{1.0, 0.0, gamma0, alpha};
    const auto sum = lattice_interference(k, layers, unit);
    return sum.value * gamma0;
}

}  // namespace csrange
