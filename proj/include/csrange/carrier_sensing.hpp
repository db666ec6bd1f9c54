#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "csrange/interference.hpp"

namespace csrange {

struct CSConfig {
    double cs_range = 1.0;  // meters

    void validate() const { detail::require_positive(cs_range, "cs_range"); }
};

/// Default ceiling on link count for exhaustive maximal-set enumeration.
inline constexpr std::size_t kExhaustiveLinkBound = 20;

/// True when the two transmitters sense each other, i.e. d < cs_range (strict).
/// A distance equal to cs_range up to kDistanceTolerance does not block.
inline bool blocks(const NodePosition& ti, const NodePosition& tj, const CSConfig& cfg) {
    return distance(ti, tj) < cfg.cs_range - kDistanceTolerance;
}

inline bool is_admissible(std::span<const std::size_t> members, const LinkSet& ls, const CSConfig& cfg) {
    for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
            if (blocks(ls.at(members[a]).tx(), ls.at(members[b]).tx(), cfg)) return false;
        }
    }
    return true;
}

namespace detail {

using Mask = std::uint64_t;

inline void require_enumerable(const LinkSet& ls, std::size_t bound) {
    if (bound > 64) bound = 64;
    if (ls.size() > bound) {
        throw Error(ErrorCode::TooLarge, "exhaustive enumeration is limited to " + std::to_string(bound) +
                                             " links, got " + std::to_string(ls.size()));
    }
}

/// compatible[i] has bit j set iff links i and j (i != j) may transmit together.
inline std::vector<Mask> compatibility_masks(const LinkSet& ls, const CSConfig& cfg) {
    const std::size_t n = ls.size();
    std::vector<Mask> compatible(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!blocks(ls[i].tx(), ls[j].tx(), cfg)) {
                compatible[i] |= Mask{1} << j;
                compatible[j] |= Mask{1} << i;
            }
        }
    }
    return compatible;
}

inline std::vector<std::size_t> mask_to_indices(Mask m) {
    std::vector<std::size_t> out;
    while (m != 0) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
        m &= m - 1;
    }
    return out;
}

/// Bron-Kerbosch with Tomita pivoting over the compatibility graph; maximal cliques there are
/// maximal admissible sets.
class MaximalSetSearch {
public:
    MaximalSetSearch(const std::vector<Mask>& compatible, std::size_t cap) : compatible_(compatible), cap_(cap) {}

    void run(Mask all) { expand(0, all, 0); }

    std::vector<Mask> found;
    bool truncated = false;

private:
    void expand(Mask r, Mask p, Mask x) {
        if (truncated) return;
        if (p == 0 && x == 0) {
            if (found.size() >= cap_) {
                truncated = true;
                return;
            }
            found.push_back(r);
            return;
        }
        Mask pivot_nbrs = 0;
        int best = -1;
        for (Mask px = p | x; px != 0; px &= px - 1) {
            const int u = std::countr_zero(px);
            const int deg = std::popcount(p & compatible_[static_cast<std::size_t>(u)]);
            if (deg > best) {
                best = deg;
                pivot_nbrs = compatible_[static_cast<std::size_t>(u)];
            }
        }
        for (Mask cand = p & ~pivot_nbrs; cand != 0; cand &= cand - 1) {
            const int v = std::countr_zero(cand);
            const Mask bit = Mask{1} << v;
            const Mask nbrs = compatible_[static_cast<std::size_t>(v)];
            expand(r | bit, p & nbrs, x & nbrs);
            if (truncated) return;
            p &= ~bit;
            x |= bit;
        }
    }

    const std::vector<Mask>& compatible_;
    std::size_t cap_;
};

}  // namespace detail

struct MaximalSets {
    std::vector<std::vector<std::size_t>> sets;  // each ascending; list in lexicographic order
    bool truncated = false;
};

/// All maximal admissible link sets (maximal independent sets of the sensing-conflict graph).
inline MaximalSets enumerate_maximal_admissible_sets(const LinkSet& ls, const CSConfig& cfg,
                                                     std::size_t cap = SIZE_MAX,
                                                     std::size_t bound = kExhaustiveLinkBound) {
    cfg.validate();
    detail::require_enumerable(ls, bound);
    const auto compatible = detail::compatibility_masks(ls, cfg);
    const std::size_t n = ls.size();
    const detail::Mask all = n == 64 ? ~detail::Mask{0} : (detail::Mask{1} << n) - 1;

    detail::MaximalSetSearch search(compatible, cap);
    search.run(all);

    MaximalSets out;
    out.truncated = search.truncated;
    for (auto m : search.found) out.sets.push_back(detail::mask_to_indices(m));
    std::sort(out.sets.begin(), out.sets.end());
    return out;
}

struct SafetyWitness {
    std::vector<std::size_t> set;
    std::size_t link = 0;
    Phase frame = Phase::Data;  // DATA: failure at the receiver; ACK: failure at the transmitter
    Sinr sinr = Sinr::unbounded();
};

struct SafetyVerdict {
    std::optional<SafetyWitness> witness;  // empty when safe

    bool safe() const { return !witness.has_value(); }
};

/// Returns the first failing frame of a set under worst-case phases, if any.
inline std::optional<SafetyWitness> find_violation(std::span<const std::size_t> set, const LinkSet& ls,
                                                   const RadioParams& params) {
    for (auto i : set) {
        const auto s = worst_case_transfer_sinr(i, set, ls, params);
        if (!s.data.meets(params.sinr_threshold)) {
            return SafetyWitness{{set.begin(), set.end()}, i, Phase::Data, s.data};
        }
        if (!s.ack.meets(params.sinr_threshold)) {
            return SafetyWitness{{set.begin(), set.end()}, i, Phase::Ack, s.ack};
        }
    }
    return std::nullopt;
}

/// Checks whether `cfg.cs_range` protects every admissible set of `ls`.
///
/// Only maximal admissible sets are examined: dropping a member never lowers anyone's SINR,
/// so a violation in any admissible set also shows up in a maximal superset.
inline SafetyVerdict is_safe_csrange(const LinkSet& ls, const CSConfig& cfg, const RadioParams& params,
                                     std::size_t bound = kExhaustiveLinkBound) {
    params.validate();
    const auto maximal = enumerate_maximal_admissible_sets(ls, cfg, SIZE_MAX, bound);
    for (const auto& set : maximal.sets) {
        if (auto w = find_violation(set, ls, params)) return {std::move(w)};
    }
    return {};
}

}  // namespace csrange
