#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "csrange/analytics.hpp"
#include "csrange/carrier_sensing.hpp"
#include "csrange/interference.hpp"
#include "csrange/packing.hpp"
#include "csrange/rng.hpp"

namespace csrange {

struct TopologyConfig {
    double area_side = 20.0;     // meters
    std::size_t num_links = 20;
    double max_link_len = 1.0;   // meters
    std::uint64_t rng_seed = 1;

    void validate() const {
        detail::require_positive(area_side, "area_side");
        detail::require_positive(max_link_len, "max_link_len");
        if (num_links == 0) throw Error(ErrorCode::InvalidArgument, "num_links must be at least 1");
    }
};

/// Transmitters uniform in [0, area_side]^2; each receiver uniform in the disk of radius
/// max_link_len around its transmitter. Deterministic in rng_seed.
inline LinkSet random_topology(const TopologyConfig& cfg) {
    cfg.validate();
    rng::Stream s(cfg.rng_seed);
    std::vector<DirectedLink> links;
    links.reserve(cfg.num_links);
    while (links.size() < cfg.num_links) {
        const NodePosition tx{s.uniform(0.0, cfg.area_side), s.uniform(0.0, cfg.area_side)};
        for (;;) {
            const double r = cfg.max_link_len * std::sqrt(s.uniform());
            const double theta = 2.0 * std::numbers::pi * s.uniform();
            if (r <= kDistanceTolerance) continue;
            links.emplace_back(tx, NodePosition{tx.x + r * std::cos(theta), tx.y + r * std::sin(theta)});
            break;
        }
    }
    return LinkSet(std::move(links));
}

/// Sequential channel acquisition: scan `order`, admit each link whose transmitter is not
/// blocked by any already admitted transmitter. Result is ascending.
inline std::vector<std::size_t> greedy_admission(const LinkSet& ls, const CSConfig& cfg,
                                                 std::span<const std::size_t> order) {
    std::vector<bool> seen(ls.size(), false);
    if (order.size() != ls.size()) throw Error(ErrorCode::InvalidArgument, "order must be a permutation of the links");
    for (auto i : order) {
        if (i >= ls.size() || seen[i]) throw Error(ErrorCode::InvalidArgument, "order must be a permutation of the links");
        seen[i] = true;
    }
    std::vector<std::size_t> admitted;
    for (auto i : order) {
        const bool clear = std::none_of(admitted.begin(), admitted.end(),
                                        [&](std::size_t j) { return blocks(ls[i].tx(), ls[j].tx(), cfg); });
        if (clear) admitted.push_back(i);
    }
    std::sort(admitted.begin(), admitted.end());
    return admitted;
}

struct SweepRow {
    double cs_range_over_dmax = 0.0;
    std::size_t trials = 0;
    std::size_t admitted_sets = 0;
    std::size_t violating_sets = 0;
    double violation_rate = 0.0;
    std::size_t violating_links = 0;
    std::size_t admitted_links = 0;  // summed set sizes; not part of the CSV schema
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

namespace detail {

/// Runs fn(i) for i in [0, n) on up to `threads` workers. fn must only touch slot i.
template <class Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
    threads = std::max<std::size_t>(1, std::min(threads, n));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += threads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

struct TrialCounts {
    std::size_t admitted_links = 0;
    std::size_t admitted_sets = 0;
    std::size_t violating_sets = 0;
    std::size_t violating_links = 0;
};

}  // namespace detail

/// Collision statistics of greedy CSMA admission versus carrier-sensing range.
///
/// Every multiplier m sets cs_range = m * d_max of the drawn topology. Trial t uses topology
/// seed derive_seed(cfg.rng_seed, t) and permutation p of that trial uses
/// derive_seed(cfg.rng_seed, t, p + 1), so the same orders are replayed across multipliers and
/// the output does not depend on `threads`. Admitted links are judged by the worst-case phase
/// check; a set counts as violating if any member fails.
inline SweepResult theorem1_sweep(const TopologyConfig& cfg, const RadioParams& params,
                                  std::span<const double> range_multipliers, std::size_t trials,
                                  std::size_t permutations_per_trial, std::size_t threads = 1) {
    cfg.validate();
    params.validate();
    if (range_multipliers.empty()) throw Error(ErrorCode::InvalidArgument, "sweep needs at least one multiplier");
    for (double m : range_multipliers) detail::require_positive(m, "range multiplier");
    if (trials == 0 || permutations_per_trial == 0) {
        throw Error(ErrorCode::InvalidArgument, "trials and permutations_per_trial must be positive");
    }

    const std::size_t nm = range_multipliers.size();
    std::vector<std::vector<detail::TrialCounts>> per_trial(trials, std::vector<detail::TrialCounts>(nm));

    detail::parallel_for(trials, threads, [&](std::size_t t) {
        TopologyConfig tc = cfg;
        tc.rng_seed = rng::derive_seed(cfg.rng_seed, t);
        const LinkSet ls = random_topology(tc);
        const double d_max = max_link_length(ls);
        for (std::size_t p = 0; p < permutations_per_trial; ++p) {
            rng::Stream s(rng::derive_seed(cfg.rng_seed, t, p + 1));
            const auto order = s.permutation(ls.size());
            for (std::size_t k = 0; k < nm; ++k) {
                const CSConfig cs{range_multipliers[k] * d_max};
                const auto admitted = greedy_admission(ls, cs, order);
                std::size_t failing = 0;
                for (auto i : admitted) {
                    if (!worst_case_transfer_succeeds(i, admitted, ls, params)) ++failing;
                }
                auto& c = per_trial[t][k];
                ++c.admitted_sets;
                c.admitted_links += admitted.size();
                c.violating_sets += failing > 0 ? 1 : 0;
                c.violating_links += failing;
            }
        }
    });

    SweepResult out;
    for (std::size_t k = 0; k < nm; ++k) {
        SweepRow row;
        row.cs_range_over_dmax = range_multipliers[k];
        row.trials = trials;
        for (const auto& t : per_trial) {
            row.admitted_sets += t[k].admitted_sets;
            row.violating_sets += t[k].violating_sets;
            row.violating_links += t[k].violating_links;
            row.admitted_links += t[k].admitted_links;
        }
        row.violation_rate = row.admitted_sets == 0
                                 ? 0.0
                                 : static_cast<double>(row.violating_sets) / static_cast<double>(row.admitted_sets);
        out.rows.push_back(row);
    }
    return out;
}

/// How interferer links are laid out around the victim in the pairwise counterexample.
enum class InterfererOrientation {
    /// Length (1 - 1e-3) d_max, receiver aimed at the victim receiver. Each interferer alone
    /// stays above gamma0; together they do not.
    TowardVictim,
    /// Near-degenerate links of length 1e-3 d_max with receivers aimed away from the victim.
    AwayShort,
};

inline constexpr double kCounterexampleEpsilon = 1e-3;

struct InterfererContribution {
    std::size_t link = 0;
    std::size_t ring = 0;
    Phase data_sender = Phase::Data;  // endpoint that hurts the victim receiver most
    double data_power = 0.0;          // watts at the victim receiver
    Phase ack_sender = Phase::Data;   // endpoint that hurts the victim transmitter most
    double ack_power = 0.0;           // watts at the victim transmitter
    Sinr pairwise_data_sinr = Sinr::unbounded();  // victim DATA SINR with only this interferer
};

struct Counterexample {
    LinkSet topology;
    CSConfig cs;
    std::size_t victim = 0;
    std::size_t rings = 0;
    TransferSinr victim_sinr;  // worst-case over interferer phases
    std::vector<InterfererContribution> contributions;
};

namespace detail {

inline std::vector<InterfererContribution> contributions_to(std::size_t victim, const LinkSet& ls,
                                                            std::span<const std::size_t> ring_of,
                                                            const RadioParams& params) {
    const double a = params.path_loss_exp;
    const auto& v = ls[victim];
    const double signal = params.tx_power * path_gain(v.tx(), v.rx(), a);
    std::vector<InterfererContribution> out;
    for (std::size_t j = 0; j < ls.size(); ++j) {
        if (j == victim) continue;
        const auto& o = ls[j];
        InterfererContribution c;
        c.link = j;
        c.ring = ring_of[j];
        const double d_tx = params.tx_power * path_gain(o.tx(), v.rx(), a);
        const double d_rx = params.tx_power * path_gain(o.rx(), v.rx(), a);
        c.data_sender = d_tx >= d_rx ? Phase::Data : Phase::Ack;
        c.data_power = std::max(d_tx, d_rx);
        const double a_tx = params.tx_power * path_gain(o.tx(), v.tx(), a);
        const double a_rx = params.tx_power * path_gain(o.rx(), v.tx(), a);
        c.ack_sender = a_tx >= a_rx ? Phase::Data : Phase::Ack;
        c.ack_power = std::max(a_tx, a_rx);
        c.pairwise_data_sinr = Sinr::of(signal / (params.noise_power + c.data_power));
        out.push_back(c);
    }
    return out;
}

}  // namespace detail

/// Topology that the pairwise-model range admits in full but that fails under cumulative
/// interference.
///
/// The victim runs from (0,0) to (d_max,0). Interferer transmitters occupy `rings` hexagonal
/// rings of a triangular lattice centred on the victim transmitter with spacing equal to the
/// pairwise range, so all transmitters are exactly cs_range apart and the whole set is
/// admissible. Throws NotAViolation (with the achieved SINR) if the victim still succeeds.
inline Counterexample build_pairwise_counterexample(const RadioParams& params, std::size_t rings, double d_max = 1.0,
                                                    InterfererOrientation orientation = InterfererOrientation::TowardVictim) {
    params.validate();
    detail::require_positive(d_max, "d_max");
    if (rings == 0) throw Error(ErrorCode::InvalidArgument, "counterexample needs at least one ring");

    const double spacing = safe_csrange_pairwise(params.sinr_threshold, params.path_loss_exp, d_max);
    const NodePosition victim_tx{0.0, 0.0};
    const NodePosition victim_rx{d_max, 0.0};
    const auto lattice = build_hex_packing(spacing, rings, victim_tx);

    const bool toward = orientation == InterfererOrientation::TowardVictim;
    const double len = (toward ? 1.0 - kCounterexampleEpsilon : kCounterexampleEpsilon) * d_max;

    std::vector<DirectedLink> links{DirectedLink(victim_tx, victim_rx)};
    std::vector<std::size_t> ring_of{0};
    for (const auto& pt : lattice.points) {
        const double d = distance(pt.pos, victim_rx);
        const double ux = (victim_rx.x - pt.pos.x) / d;
        const double uy = (victim_rx.y - pt.pos.y) / d;
        const double sign = toward ? 1.0 : -1.0;
        links.emplace_back(pt.pos, NodePosition{pt.pos.x + sign * len * ux, pt.pos.y + sign * len * uy});
        ring_of.push_back(pt.ring);
    }

    Counterexample ce{LinkSet(std::move(links)), CSConfig{spacing}, 0, rings, {}, {}};
    std::vector<std::size_t> everyone(ce.topology.size());
    for (std::size_t i = 0; i < everyone.size(); ++i) everyone[i] = i;
    if (!is_admissible(everyone, ce.topology, ce.cs)) {
        throw Error(ErrorCode::NotAViolation, "constructed layout is not admissible at the pairwise range");
    }
    ce.victim_sinr = worst_case_transfer_sinr(0, everyone, ce.topology, params);
    if (ce.victim_sinr.succeeds(params.sinr_threshold)) {
        const Sinr worst = std::min(ce.victim_sinr.data, ce.victim_sinr.ack);
        throw Error(ErrorCode::NotAViolation,
                    "victim still decodes with " + std::to_string(rings) + " ring(s): worst SINR " +
                        (worst.is_unbounded() ? std::string("unbounded") : std::to_string(worst.value())) +
                        " >= gamma0 " + std::to_string(params.sinr_threshold));
    }
    ce.contributions = detail::contributions_to(0, ce.topology, ring_of, params);
    return ce;
}

/// Smallest ring count in [1, max_rings] that yields a violation.
inline Counterexample find_pairwise_counterexample(const RadioParams& params, std::size_t max_rings = 8,
                                                   double d_max = 1.0,
                                                   InterfererOrientation orientation = InterfererOrientation::TowardVictim) {
    for (std::size_t r = 1; r < max_rings; ++r) {
        try {
            return build_pairwise_counterexample(params, r, d_max, orientation);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotAViolation) throw;
        }
    }
    return build_pairwise_counterexample(params, max_rings, d_max, orientation);
}

/// Bisects cs_range between lo and hi (meters), whose safety verdicts must differ, and returns
/// the safe-side end of the final bracket, which is at most `tol` wide.
inline double bisect_empirical_safe_range(const LinkSet& ls, const RadioParams& params, double lo, double hi,
                                          double tol) {
    detail::require_positive(lo, "lo");
    detail::require_positive(hi, "hi");
    detail::require_positive(tol, "tol");
    if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "bisection needs lo < hi");
    const bool lo_safe = is_safe_csrange(ls, CSConfig{lo}, params).safe();
    const bool hi_safe = is_safe_csrange(ls, CSConfig{hi}, params).safe();
    if (lo_safe == hi_safe) {
        throw Error(ErrorCode::SamePolarity, std::string("both ends are ") + (lo_safe ? "safe" : "unsafe"));
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (is_safe_csrange(ls, CSConfig{mid}, params).safe() == lo_safe) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo_safe ? lo : hi;
}

}  // namespace csrange
