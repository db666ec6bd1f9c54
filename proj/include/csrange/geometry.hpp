#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "csrange/error.hpp"

namespace csrange {

/// Absolute tolerance (meters) used wherever two distances are compared for equality.
inline constexpr double kDistanceTolerance = 1e-9;

/// A point in the plane, coordinates in meters.
struct NodePosition {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const NodePosition&, const NodePosition&) = default;

    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline double distance(const NodePosition& a, const NodePosition& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

inline bool coincident(const NodePosition& a, const NodePosition& b) {
    return distance(a, b) <= kDistanceTolerance;
}

/// Power gain d(a,b)^-alpha of the log-distance path model.
inline double path_gain(const NodePosition& a, const NodePosition& b, double alpha) {
    detail::require_exponent(alpha);
    const double d = distance(a, b);
    if (d <= kDistanceTolerance) {
        throw Error(ErrorCode::ZeroDistance, "path gain is singular for coincident nodes");
    }
    return std::pow(d, -alpha);
}

/// Transmitter/receiver pair. Length is strictly positive.
class DirectedLink {
public:
    DirectedLink(NodePosition tx, NodePosition rx) : tx_(tx), rx_(rx) {
        if (!tx_.finite() || !rx_.finite()) {
            throw Error(ErrorCode::InvalidArgument, "link endpoints must be finite");
        }
        if (coincident(tx_, rx_)) {
            throw Error(ErrorCode::ZeroDistance, "zero-length link");
        }
    }

    const NodePosition& tx() const { return tx_; }
    const NodePosition& rx() const { return rx_; }
    double length() const { return distance(tx_, rx_); }

    friend bool operator==(const DirectedLink&, const DirectedLink&) = default;

private:
    NodePosition tx_;
    NodePosition rx_;
};

/// Non-empty ordered collection of links.
class LinkSet {
public:
    explicit LinkSet(std::vector<DirectedLink> links) : links_(std::move(links)) {
        if (links_.empty()) {
            throw Error(ErrorCode::EmptyLinkSet, "a link set needs at least one link");
        }
    }

    std::size_t size() const { return links_.size(); }
    const DirectedLink& operator[](std::size_t i) const { return links_[i]; }
    const DirectedLink& at(std::size_t i) const {
        if (i >= links_.size()) {
            throw Error(ErrorCode::InvalidArgument, "link index " + std::to_string(i) + " out of range");
        }
        return links_[i];
    }
    std::span<const DirectedLink> links() const { return links_; }
    auto begin() const { return links_.begin(); }
    auto end() const { return links_.end(); }

private:
    std::vector<DirectedLink> links_;
};

inline double max_link_length(std::span<const DirectedLink> links) {
    if (links.empty()) {
        throw Error(ErrorCode::EmptyLinkSet, "max link length of an empty set");
    }
    double best = 0.0;
    for (const auto& l : links) best = std::max(best, l.length());
    return best;
}

inline double max_link_length(const LinkSet& ls) { return max_link_length(ls.links()); }

/// The four transmitter/receiver distances between two links.
struct CrossDistances {
    double tx_tx = 0.0;  // d(T_i, T_j)
    double txi_rxj = 0.0;  // d(T_i, R_j)
    double txj_rxi = 0.0;  // d(T_j, R_i)
    double rx_rx = 0.0;  // d(R_i, R_j)

    double min() const { return std::min({tx_tx, txi_rxj, txj_rxi, rx_rx}); }
};

inline CrossDistances cross_distances(const DirectedLink& li, const DirectedLink& lj) {
    return {distance(li.tx(), lj.tx()), distance(li.tx(), lj.rx()), distance(lj.tx(), li.rx()),
            distance(li.rx(), lj.rx())};
}

}  // namespace csrange
