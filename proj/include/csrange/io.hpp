#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "csrange/analytics.hpp"
#include "csrange/carrier_sensing.hpp"
#include "csrange/harness.hpp"
#include "csrange/packing.hpp"

namespace csrange::io {

/// File could not be read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using nlohmann::json;

/// Plain decimal (never exponent) with at least 10 significant digits.
inline std::string decimal(double v) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "cannot format non-finite value");
    int decimals = 9;
    if (v != 0.0) decimals = 9 - static_cast<int>(std::floor(std::log10(std::fabs(v))));
    decimals = std::max(6, std::min(decimals, 40));
    std::array<char, 512> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, decimals);
    return std::string(buf.data(), res.ptr);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

// ---- topology: {"links": [{"tx": [x, y], "rx": [x, y]}, ...]}

inline json point_json(const NodePosition& p) { return json::array({p.x, p.y}); }

inline json topology_json(const LinkSet& ls) {
    json links = json::array();
    for (const auto& l : ls) links.push_back({{"tx", point_json(l.tx())}, {"rx", point_json(l.rx())}});
    return {{"links", links}};
}

inline NodePosition parse_point(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be an [x, y] number pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

inline LinkSet parse_topology(const json& doc) {
    if (!doc.is_object() || !doc.contains("links") || !doc["links"].is_array()) {
        throw Error(ErrorCode::InvalidArgument, "topology needs a \"links\" array");
    }
    std::vector<DirectedLink> links;
    for (const auto& l : doc["links"]) {
        if (!l.is_object() || !l.contains("tx") || !l.contains("rx")) {
            throw Error(ErrorCode::InvalidArgument, "each link needs \"tx\" and \"rx\"");
        }
        links.emplace_back(parse_point(l["tx"], "tx"), parse_point(l["rx"], "rx"));
    }
    return LinkSet(std::move(links));
}

inline LinkSet parse_topology(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed topology JSON: ") + e.what());
    }
    return parse_topology(doc);
}

inline LinkSet load_topology(const std::string& path) { return parse_topology(read_text_file(path)); }

inline void save_topology(const std::string& path, const LinkSet& ls) {
    write_text_file(path, topology_json(ls).dump(2) + "\n");
}

// ---- CSV

inline std::string ratio_curve_csv(std::span<const RatioCurveRow> rows) {
    std::ostringstream os;
    os << "alpha,gamma0,ratio,limit\n";
    for (const auto& r : rows) {
        os << decimal(r.alpha) << ',' << decimal(r.gamma0) << ',' << decimal(r.ratio) << ',' << decimal(r.limit) << '\n';
    }
    return os.str();
}

inline std::string sweep_csv(const SweepResult& res) {
    std::ostringstream os;
    os << "cs_range_over_dmax,trials,admitted_sets,violating_sets,violation_rate,violating_links\n";
    for (const auto& r : res.rows) {
        os << decimal(r.cs_range_over_dmax) << ',' << r.trials << ',' << r.admitted_sets << ',' << r.violating_sets
           << ',' << decimal(r.violation_rate) << ',' << r.violating_links << '\n';
    }
    return os.str();
}

// ---- JSON reports

inline json sinr_json(const Sinr& s) { return s.is_unbounded() ? json(nullptr) : json(s.value()); }

inline const char* endpoint_name(Phase sender) { return sender == Phase::Data ? "tx" : "rx"; }

inline json range_report_json(const RangeReport& r, double d_max) {
    return {{"gamma0", r.gamma0},
            {"alpha", r.alpha},
            {"dmax", d_max},
            {"k_constant", r.k_constant},
            {"physical_range_over_dmax", r.physical_range_over_dmax},
            {"pairwise_range_over_dmax", r.pairwise_range_over_dmax},
            {"physical_range", r.physical_range_over_dmax * d_max},
            {"pairwise_range", r.pairwise_range_over_dmax * d_max},
            {"ratio", r.ratio}};
}

inline json packing_json(const HexPacking& p) {
    json positions = json::array();
    json rings = json::array();
    for (const auto& pt : p.points) {
        positions.push_back(point_json(pt.pos));
        rings.push_back(pt.ring);
    }
    return {{"spacing", p.spacing}, {"layers", p.layers}, {"center", point_json(p.center)},
            {"positions", positions}, {"ring", rings}};
}

inline json counterexample_json(const Counterexample& ce, const RadioParams& params) {
    json contrib = json::array();
    for (const auto& c : ce.contributions) {
        contrib.push_back({{"link", c.link},
                           {"ring", c.ring},
                           {"data_sender", endpoint_name(c.data_sender)},
                           {"data_power", c.data_power},
                           {"ack_sender", endpoint_name(c.ack_sender)},
                           {"ack_power", c.ack_power},
                           {"pairwise_data_sinr", sinr_json(c.pairwise_data_sinr)}});
    }
    return {{"topology", topology_json(ce.topology)},
            {"cs_range", ce.cs.cs_range},
            {"victim", ce.victim},
            {"rings", ce.rings},
            {"gamma0", params.sinr_threshold},
            {"alpha", params.path_loss_exp},
            {"sinr", {{"data", sinr_json(ce.victim_sinr.data)}, {"ack", sinr_json(ce.victim_sinr.ack)}}},
            {"contributions", contrib}};
}

inline json witness_json(const SafetyWitness& w) {
    return {{"set", w.set}, {"link", w.link}, {"frame", to_string(w.frame)}, {"sinr", sinr_json(w.sinr)}};
}

}  // namespace csrange::io
