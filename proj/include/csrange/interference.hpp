#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "csrange/geometry.hpp"

namespace csrange {

struct RadioParams {
    double tx_power = 1.0;        // P, watts
    double noise_power = 0.0;     // N, watts
    double sinr_threshold = 10.0; // gamma0
    double path_loss_exp = 4.0;   // alpha

    void validate() const {
        detail::require_positive(tx_power, "tx_power");
        if (!(noise_power >= 0.0) || !std::isfinite(noise_power)) {
            throw Error(ErrorCode::InvalidArgument, "noise_power must be finite and >= 0");
        }
        detail::require_threshold(sinr_threshold);
        detail::require_exponent(path_loss_exp);
    }
};

enum class Phase { Data, Ack };

inline const char* to_string(Phase p) { return p == Phase::Data ? "DATA" : "ACK"; }

/// Node currently radiating on `link`: the transmitter during DATA, the receiver during ACK.
inline const NodePosition& active_sender(const DirectedLink& link, Phase phase) {
    return phase == Phase::Data ? link.tx() : link.rx();
}

struct Member {
    std::size_t link = 0;
    Phase phase = Phase::Data;
};

/// Links transmitting at the same time, each in a fixed phase.
class ConcurrentSet {
public:
    explicit ConcurrentSet(std::vector<Member> members) : members_(std::move(members)) {
        if (members_.empty()) {
            throw Error(ErrorCode::InvalidArgument, "concurrent set must be non-empty");
        }
        std::vector<std::size_t> ids;
        for (const auto& m : members_) ids.push_back(m.link);
        std::sort(ids.begin(), ids.end());
        if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
            throw Error(ErrorCode::InvalidArgument, "concurrent set has duplicate link indices");
        }
    }

    static ConcurrentSet all_in(std::span<const std::size_t> links, Phase phase) {
        std::vector<Member> m;
        for (auto i : links) m.push_back({i, phase});
        return ConcurrentSet(std::move(m));
    }

    std::span<const Member> members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool contains(std::size_t link) const {
        return std::any_of(members_.begin(), members_.end(), [&](const Member& m) { return m.link == link; });
    }

private:
    std::vector<Member> members_;
};

/// SINR value with an explicit unbounded state (no interference, no noise).
class Sinr {
public:
    static Sinr unbounded() { return Sinr(); }
    static Sinr of(double v) { return Sinr(v); }

    bool is_unbounded() const { return !value_.has_value(); }
    /// Finite ratio; throws for the unbounded sentinel.
    double value() const {
        if (!value_) throw Error(ErrorCode::InvalidArgument, "unbounded SINR has no finite value");
        return *value_;
    }
    bool meets(double threshold) const { return !value_ || *value_ >= threshold; }

    friend bool operator<(const Sinr& a, const Sinr& b) {
        if (a.is_unbounded()) return false;
        if (b.is_unbounded()) return true;
        return *a.value_ < *b.value_;
    }

private:
    Sinr() = default;
    explicit Sinr(double v) : value_(v) {}
    std::optional<double> value_;
};

namespace detail {

inline Sinr sinr_from_gains(double signal_gain, double interference_gain, const RadioParams& params) {
    const double denom = params.noise_power + params.tx_power * interference_gain;
    if (denom == 0.0) return Sinr::unbounded();
    return Sinr::of(params.tx_power * signal_gain / denom);
}

}  // namespace detail

inline Sinr sinr_at(const NodePosition& victim_receiver, const NodePosition& victim_sender,
                    std::span<const NodePosition> interferers, const RadioParams& params) {
    params.validate();
    const double alpha = params.path_loss_exp;
    const double signal = path_gain(victim_sender, victim_receiver, alpha);
    double interference = 0.0;
    for (const auto& p : interferers) interference += path_gain(p, victim_receiver, alpha);
    return detail::sinr_from_gains(signal, interference, params);
}

/// SINR of the DATA frame (at R_i) and the ACK frame (at T_i) of one link.
struct TransferSinr {
    Sinr data = Sinr::unbounded();
    Sinr ack = Sinr::unbounded();

    bool succeeds(double threshold) const { return data.meets(threshold) && ack.meets(threshold); }
};

inline TransferSinr transfer_sinr(std::size_t victim, const ConcurrentSet& cset, const LinkSet& ls,
                                  const RadioParams& params) {
    if (!cset.contains(victim)) {
        throw Error(ErrorCode::InvalidArgument, "victim link is not a member of the concurrent set");
    }
    const auto& v = ls.at(victim);
    std::vector<NodePosition> senders;
    for (const auto& m : cset.members()) {
        if (m.link != victim) senders.push_back(active_sender(ls.at(m.link), m.phase));
    }
    return {sinr_at(v.rx(), v.tx(), senders, params), sinr_at(v.tx(), v.rx(), senders, params)};
}

inline bool transfer_succeeds(std::size_t victim, const ConcurrentSet& cset, const LinkSet& ls,
                              const RadioParams& params) {
    return transfer_sinr(victim, cset, ls, params).succeeds(params.sinr_threshold);
}

/// Per-frame SINR minimised over every phase assignment of the other members.
///
/// The interference sum is separable per interferer, so the minimum is reached by letting each
/// interferer radiate from whichever of its two endpoints is closer to the frame's receiver.
/// DATA and ACK may pick different assignments; that is intended, since success must hold for
/// every assignment and each frame is checked independently.
inline TransferSinr worst_case_transfer_sinr(std::size_t victim, std::span<const std::size_t> members,
                                             const LinkSet& ls, const RadioParams& params) {
    params.validate();
    if (std::find(members.begin(), members.end(), victim) == members.end()) {
        throw Error(ErrorCode::InvalidArgument, "victim link is not in the member list");
    }
    const double alpha = params.path_loss_exp;
    const auto& v = ls.at(victim);
    double at_rx = 0.0;
    double at_tx = 0.0;
    for (auto j : members) {
        if (j == victim) continue;
        const auto& o = ls.at(j);
        at_rx += std::max(path_gain(o.tx(), v.rx(), alpha), path_gain(o.rx(), v.rx(), alpha));
        at_tx += std::max(path_gain(o.tx(), v.tx(), alpha), path_gain(o.rx(), v.tx(), alpha));
    }
    const double signal = path_gain(v.tx(), v.rx(), alpha);
    return {detail::sinr_from_gains(signal, at_rx, params), detail::sinr_from_gains(signal, at_tx, params)};
}

inline bool worst_case_transfer_succeeds(std::size_t victim, std::span<const std::size_t> members,
                                         const LinkSet& ls, const RadioParams& params) {
    return worst_case_transfer_sinr(victim, members, ls, params).succeeds(params.sinr_threshold);
}

}  // namespace csrange
