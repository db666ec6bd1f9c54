#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "csrange/csrange.hpp"
#include "csrange/io.hpp"

namespace csrange::cli {

enum ExitCode : int { kOk = 0, kUnsafe = 1, kInvalidInput = 2, kIoFailure = 3 };

namespace detail {

inline void row(std::ostream& out, const std::string& name, const std::string& value) {
    out << std::left << std::setw(28) << name << value << '\n';
}

inline void row(std::ostream& out, const std::string& name, double value) { row(out, name, io::decimal(value)); }

inline std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

/// Multipliers are numbers or the token "K+2" (Theorem 1's range for the chosen gamma0, alpha).
inline std::vector<double> parse_multipliers(const std::vector<std::string>& tokens, double gamma0, double alpha) {
    std::vector<double> out;
    for (const auto& t : tokens) {
        if (lower(t) == "k+2") {
            out.push_back(packing_constant_k(gamma0, alpha) + 2.0);
            continue;
        }
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != t.size() || t.empty()) throw Error(ErrorCode::InvalidArgument, "bad multiplier '" + t + "'");
        out.push_back(v);
    }
    return out;
}

struct Radio {
    double gamma0 = 10.0;
    double alpha = 4.0;
    double noise = 0.0;
    double power = 1.0;

    void add_to(CLI::App* app) {
        app->add_option("--gamma0", gamma0, "SINR threshold (linear)")->capture_default_str();
        app->add_option("--alpha", alpha, "path-loss exponent, > 2")->capture_default_str();
        app->add_option("--noise", noise, "noise power N (watts)")->capture_default_str();
        app->add_option("--power", power, "transmit power P (watts)")->capture_default_str();
    }

    RadioParams params() const {
        RadioParams p{power, noise, gamma0, alpha};
        p.validate();
        return p;
    }
};

}  // namespace detail

/// Runs one invocation. `args` excludes the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Safe carrier-sensing range toolkit for CSMA networks under cumulative interference"};
    app.require_subcommand(1);

    // ranges
    double r_gamma0 = 10.0, r_alpha = 4.0, r_dmax = 1.0;
    std::string r_json;
    auto* ranges = app.add_subcommand("ranges", "packing constant K and both safe carrier-sensing ranges");
    ranges->add_option("--gamma0", r_gamma0, "SINR threshold (linear)")->capture_default_str();
    ranges->add_option("--alpha", r_alpha, "path-loss exponent, > 2")->capture_default_str();
    ranges->add_option("--dmax", r_dmax, "maximum link length (m)")->capture_default_str();
    ranges->add_option("--json", r_json, "also write the report as JSON to this path");

    // ratio-curve
    std::vector<double> c_alphas{3.0, 4.0, 6.0};
    double c_gmin = 1.0, c_gmax = 1000.0;
    std::size_t c_points = 50;
    std::string c_out;
    auto* curve = app.add_subcommand("ratio-curve", "physical/pairwise range ratio over a gamma0 grid (CSV)");
    curve->add_option("--alpha-list", c_alphas, "path-loss exponents")->delimiter(',')->capture_default_str();
    curve->add_option("--gamma0-min", c_gmin, "smallest gamma0")->capture_default_str();
    curve->add_option("--gamma0-max", c_gmax, "largest gamma0")->capture_default_str();
    curve->add_option("--points", c_points, "log-spaced gamma0 points")->capture_default_str();
    curve->add_option("--out", c_out, "CSV output path")->required();

    // pack
    double p_spacing = 1.0, p_cx = 0.0, p_cy = 0.0;
    std::size_t p_layers = 2;
    std::string p_json;
    auto* pack = app.add_subcommand("pack", "hexagonal worst-case interferer packing and its ring census");
    pack->add_option("--spacing", p_spacing, "lattice spacing (m)")->capture_default_str();
    pack->add_option("--layers", p_layers, "number of hexagonal rings")->capture_default_str();
    pack->add_option("--center-x", p_cx, "center x (m)");
    pack->add_option("--center-y", p_cy, "center y (m)");
    pack->add_option("--json", p_json, "write positions and ring indices as JSON");

    // sweep
    detail::Radio s_radio;
    std::uint64_t s_seed = 0;
    TopologyConfig s_topo;
    std::size_t s_trials = 100, s_perms = 4, s_threads = 1;
    std::vector<std::string> s_mult{"2", "3", "4", "K+2"};
    std::string s_out;
    auto* sweep = app.add_subcommand("sweep", "violation rate of greedy admission versus carrier-sensing range");
    s_radio.add_to(sweep);
    sweep->add_option("--seed", s_seed, "master RNG seed")->required();
    sweep->add_option("--links", s_topo.num_links, "links per topology")->capture_default_str();
    sweep->add_option("--area", s_topo.area_side, "side of the square area (m)")->capture_default_str();
    sweep->add_option("--max-len", s_topo.max_link_len, "maximum link length drawn (m)")->capture_default_str();
    sweep->add_option("--trials", s_trials, "random topologies")->capture_default_str();
    sweep->add_option("--perms", s_perms, "admission orders per topology")->capture_default_str();
    sweep->add_option("--multipliers", s_mult, "cs_range / d_max values; 'K+2' allowed")->delimiter(',');
    sweep->add_option("--threads", s_threads, "worker threads (output does not depend on it)")->capture_default_str();
    sweep->add_option("--out", s_out, "CSV output path");

    // counterexample
    detail::Radio x_radio;
    double x_dmax = 1.0;
    std::size_t x_rings = 0, x_max_rings = 8;
    std::string x_orient = "toward", x_json, x_topo_out;
    auto* cex = app.add_subcommand("counterexample", "layout that the pairwise-model range admits but that collides");
    x_radio.add_to(cex);
    cex->add_option("--dmax", x_dmax, "victim link length (m)")->capture_default_str();
    cex->add_option("--rings", x_rings, "hexagonal rings of interferers; 0 searches for the minimum")->capture_default_str();
    cex->add_option("--max-rings", x_max_rings, "search limit when --rings is 0")->capture_default_str();
    cex->add_option("--orientation", x_orient, "interferer receivers: toward | away")
        ->check(CLI::IsMember({"toward", "away"}))
        ->capture_default_str();
    cex->add_option("--json", x_json, "write the full report as JSON");
    cex->add_option("--topology-out", x_topo_out, "write the topology JSON");

    // check-safe
    detail::Radio k_radio;
    std::string k_topo, k_json;
    double k_range = 0.0, k_mult = 0.0;
    std::size_t k_bound = kExhaustiveLinkBound;
    auto* check = app.add_subcommand("check-safe", "exhaustive safety verdict for one topology and range");
    k_radio.add_to(check);
    check->add_option("--topology", k_topo, "topology JSON path")->required();
    auto* k_range_opt = check->add_option("--cs-range", k_range, "carrier-sensing range (m)");
    auto* k_mult_opt = check->add_option("--multiplier", k_mult, "carrier-sensing range in units of d_max");
    k_range_opt->excludes(k_mult_opt);
    check->add_option("--max-links", k_bound, "exhaustive enumeration bound")->capture_default_str();
    check->add_option("--json", k_json, "write the verdict (and witness) as JSON");

    // bisect
    detail::Radio b_radio;
    std::string b_topo;
    double b_lo = 0.0, b_hi = 0.0, b_tol = 0.0;
    auto* bisect = app.add_subcommand("bisect", "smallest safe carrier-sensing range of one topology, by bisection");
    b_radio.add_to(bisect);
    bisect->add_option("--topology", b_topo, "topology JSON path")->required();
    bisect->add_option("--lo", b_lo, "lower end (m); default: pairwise range");
    bisect->add_option("--hi", b_hi, "upper end (m); default: (K+2) d_max");
    bisect->add_option("--tol", b_tol, "bracket width (m); default 1e-3 d_max");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }

    try {
        if (*ranges) {
            const auto rep = range_report(r_gamma0, r_alpha);
            csrange::detail::require_positive(r_dmax, "dmax");
            detail::row(out, "gamma0", rep.gamma0);
            detail::row(out, "alpha", rep.alpha);
            detail::row(out, "dmax", r_dmax);
            detail::row(out, "K", rep.k_constant);
            detail::row(out, "pairwise_range", rep.pairwise_range_over_dmax * r_dmax);
            detail::row(out, "physical_range", rep.physical_range_over_dmax * r_dmax);
            detail::row(out, "ratio", rep.ratio);
            detail::row(out, "ratio_limit", ratio_limit(r_alpha));
            if (!r_json.empty()) io::write_text_file(r_json, io::range_report_json(rep, r_dmax).dump(2) + "\n");
            return kOk;
        }
        if (*curve) {
            const auto grid = log_grid(c_gmin, c_gmax, c_points);
            const auto rows = ratio_curve(c_alphas, grid);
            io::write_text_file(c_out, io::ratio_curve_csv(rows));
            out << "wrote " << rows.size() << " rows to " << c_out << '\n';
            return kOk;
        }
        if (*pack) {
            const auto p = build_hex_packing(p_spacing, p_layers, {p_cx, p_cy});
            out << std::left << std::setw(8) << "ring" << std::setw(8) << "count" << "min_center_distance\n";
            for (const auto& c : layer_census(p)) {
                out << std::left << std::setw(8) << c.ring << std::setw(8) << c.count << io::decimal(c.min_center_distance)
                    << '\n';
            }
            if (!p_json.empty()) io::write_text_file(p_json, io::packing_json(p).dump(2) + "\n");
            return kOk;
        }
        if (*sweep) {
            const auto params = s_radio.params();
            s_topo.rng_seed = s_seed;
            const auto mult = detail::parse_multipliers(s_mult, params.sinr_threshold, params.path_loss_exp);
            const auto res = theorem1_sweep(s_topo, params, mult, s_trials, s_perms, s_threads);
            const auto csv = io::sweep_csv(res);
            if (!s_out.empty()) io::write_text_file(s_out, csv);
            out << csv;
            return kOk;
        }
        if (*cex) {
            const auto params = x_radio.params();
            const auto orient =
                x_orient == "away" ? InterfererOrientation::AwayShort : InterfererOrientation::TowardVictim;
            const auto ce = x_rings == 0 ? find_pairwise_counterexample(params, x_max_rings, x_dmax, orient)
                                         : build_pairwise_counterexample(params, x_rings, x_dmax, orient);
            const double physical = safe_csrange_physical(params.sinr_threshold, params.path_loss_exp, x_dmax);
            detail::row(out, "links", std::to_string(ce.topology.size()));
            detail::row(out, "rings", std::to_string(ce.rings));
            detail::row(out, "cs_range (pairwise)", ce.cs.cs_range);
            detail::row(out, "victim DATA SINR", ce.victim_sinr.data.is_unbounded() ? "unbounded" : io::decimal(ce.victim_sinr.data.value()));
            detail::row(out, "victim ACK SINR", ce.victim_sinr.ack.is_unbounded() ? "unbounded" : io::decimal(ce.victim_sinr.ack.value()));
            double min_pair = std::numeric_limits<double>::infinity();
            for (const auto& c : ce.contributions) min_pair = std::min(min_pair, c.pairwise_data_sinr.value());
            detail::row(out, "min single-interferer SINR", min_pair);
            detail::row(out, "cs_range (physical)", physical);
            if (ce.topology.size() <= kExhaustiveLinkBound) {
                const auto at_physical = is_safe_csrange(ce.topology, CSConfig{physical}, params);
                detail::row(out, "verdict at physical range", at_physical.safe() ? "safe" : "unsafe");
            } else {
                detail::row(out, "verdict at physical range", "not checked (too many links)");
            }
            if (!x_json.empty()) io::write_text_file(x_json, io::counterexample_json(ce, params).dump(2) + "\n");
            if (!x_topo_out.empty()) io::save_topology(x_topo_out, ce.topology);
            return kOk;
        }
        if (*check) {
            const auto params = k_radio.params();
            const auto ls = io::load_topology(k_topo);
            if (k_range_opt->count() + k_mult_opt->count() != 1) {
                throw Error(ErrorCode::InvalidArgument, "exactly one of --cs-range or --multiplier is required");
            }
            const double range = k_range_opt->count() ? k_range : k_mult * max_link_length(ls);
            const auto verdict = is_safe_csrange(ls, CSConfig{range}, params, k_bound);
            detail::row(out, "cs_range", range);
            detail::row(out, "verdict", verdict.safe() ? "safe" : "unsafe");
            nlohmann::json doc{{"cs_range", range}, {"safe", verdict.safe()}};
            if (verdict.witness) {
                const auto& w = *verdict.witness;
                detail::row(out, "witness link", std::to_string(w.link));
                detail::row(out, "witness frame", to_string(w.frame));
                detail::row(out, "witness SINR", w.sinr.is_unbounded() ? "unbounded" : io::decimal(w.sinr.value()));
                std::string members;
                for (auto i : w.set) members += (members.empty() ? "" : " ") + std::to_string(i);
                detail::row(out, "witness set", members);
                doc["witness"] = io::witness_json(w);
            }
            if (!k_json.empty()) io::write_text_file(k_json, doc.dump(2) + "\n");
            return verdict.safe() ? kOk : kUnsafe;
        }
        if (*bisect) {
            const auto params = b_radio.params();
            const auto ls = io::load_topology(b_topo);
            const double d_max = max_link_length(ls);
            const double lo = b_lo > 0.0 ? b_lo : safe_csrange_pairwise(params.sinr_threshold, params.path_loss_exp, d_max);
            const double hi = b_hi > 0.0 ? b_hi : safe_csrange_physical(params.sinr_threshold, params.path_loss_exp, d_max);
            const double tol = b_tol > 0.0 ? b_tol : 1e-3 * d_max;
            const double threshold = bisect_empirical_safe_range(ls, params, lo, hi, tol);
            detail::row(out, "threshold", threshold);
            detail::row(out, "threshold_over_dmax", threshold / d_max);
            detail::row(out, "theorem_range", safe_csrange_physical(params.sinr_threshold, params.path_loss_exp, d_max));
            return kOk;
        }
    } catch (const io::IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidInput;
    }
    return kInvalidInput;
}

}  // namespace csrange::cli
