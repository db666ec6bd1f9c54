#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "csrange/error.hpp"

namespace csrange {

/// 6 * (1 + (2/sqrt3)^alpha / (alpha - 2)): worst-case hexagonal-lattice interference, in units of
/// the nearest-ring term, with the layer tail bounded by 1/(alpha-2).
inline double hex_interference_factor(double alpha) {
    detail::require_exponent(alpha);
    const double ring_ratio = 2.0 / std::numbers::sqrt3;
    return 6.0 * (1.0 + std::pow(ring_ratio, alpha) / (alpha - 2.0));
}

/// Minimum normalized spacing K between concurrent links (units of d_max) that keeps the
/// cumulative interference at or below P * d_max^-alpha / gamma0.
inline double packing_constant_k(double gamma0, double alpha) {
    detail::require_threshold(gamma0);
    return std::pow(gamma0 * hex_interference_factor(alpha), 1.0 / alpha);
}

inline double safe_csrange_physical(double gamma0, double alpha, double d_max) {
    detail::require_positive(d_max, "d_max");
    return (packing_constant_k(gamma0, alpha) + 2.0) * d_max;
}

inline double safe_csrange_pairwise(double gamma0, double alpha, double d_max) {
    detail::require_threshold(gamma0);
    detail::require_exponent(alpha);
    detail::require_positive(d_max, "d_max");
    return (2.0 + std::pow(gamma0, 1.0 / alpha)) * d_max;
}

inline double range_ratio(double gamma0, double alpha) {
    return safe_csrange_physical(gamma0, alpha, 1.0) / safe_csrange_pairwise(gamma0, alpha, 1.0);
}

/// Limit of range_ratio as gamma0 grows without bound.
inline double ratio_limit(double alpha) { return std::pow(hex_interference_factor(alpha), 1.0 / alpha); }

/// Closed-form ceiling on the cumulative interference from links packed at spacing k * d_max.
inline double interference_upper_bound(double k, double alpha, double tx_power, double d_max) {
    detail::require_positive(k, "k");
    detail::require_positive(tx_power, "tx_power");
    detail::require_positive(d_max, "d_max");
    return hex_interference_factor(alpha) * std::pow(k, -alpha) * tx_power * std::pow(d_max, -alpha);
}

/// sum_{n=2}^{m} n^(1-alpha). Stays below 1/(alpha-2) for every m.
inline double zeta_tail_partial_sum(double alpha, std::uint64_t m) {
    detail::require_exponent(alpha);
    if (m < 2) throw Error(ErrorCode::InvalidArgument, "layer count must be at least 2");
    double sum = 0.0;
    // smallest terms first
    for (std::uint64_t n = m; n >= 2; --n) sum += std::pow(static_cast<double>(n), 1.0 - alpha);
    return sum;
}

struct RangeReport {
    double gamma0 = 0.0;
    double alpha = 0.0;
    double k_constant = 0.0;
    double physical_range_over_dmax = 0.0;
    double pairwise_range_over_dmax = 0.0;
    double ratio = 0.0;
};

inline RangeReport range_report(double gamma0, double alpha) {
    RangeReport r;
    r.gamma0 = gamma0;
    r.alpha = alpha;
    r.k_constant = packing_constant_k(gamma0, alpha);
    r.physical_range_over_dmax = r.k_constant + 2.0;
    r.pairwise_range_over_dmax = safe_csrange_pairwise(gamma0, alpha, 1.0);
    r.ratio = r.physical_range_over_dmax / r.pairwise_range_over_dmax;
    return r;
}

struct RatioCurveRow {
    double alpha = 0.0;
    double gamma0 = 0.0;
    double ratio = 0.0;
    double limit = 0.0;
};

/// range_ratio tabulated over alpha (outer) x gamma0 (inner).
inline std::vector<RatioCurveRow> ratio_curve(std::span<const double> alphas, std::span<const double> gammas) {
    if (alphas.empty() || gammas.empty()) {
        throw Error(ErrorCode::InvalidArgument, "ratio curve needs non-empty alpha and gamma0 grids");
    }
    std::vector<RatioCurveRow> rows;
    rows.reserve(alphas.size() * gammas.size());
    for (double a : alphas) {
        const double lim = ratio_limit(a);
        for (double g : gammas) rows.push_back({a, g, range_ratio(g, a), lim});
    }
    return rows;
}

/// `points` values spaced evenly in log10 between lo and hi inclusive.
inline std::vector<double> log_grid(double lo, double hi, std::size_t points) {
    detail::require_positive(lo, "grid minimum");
    detail::require_positive(hi, "grid maximum");
    if (points == 0 || hi < lo || (points == 1 && hi != lo)) {
        throw Error(ErrorCode::InvalidArgument, "grid needs lo <= hi and at least one point (one point only if lo == hi)");
    }
    std::vector<double> out;
    if (points == 1) return {lo};
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (std::size_t i = 0; i < points; ++i) {
        out.push_back(i + 1 == points ? hi : std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1)));
    }
    out.front() = lo;
    return out;
}

}  // namespace csrange
