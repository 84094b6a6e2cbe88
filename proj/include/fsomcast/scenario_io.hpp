#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fsomcast/errors.hpp"
#include "fsomcast/geometry.hpp"
#include "fsomcast/link.hpp"
#include "fsomcast/simulator.hpp"

// Flat text formats. One entry per line, `key value`, '#' starts a comment.
// Scenario files additionally carry one `node <id> <x> <y>` record per
// receiver. Key names are listed in the README.

namespace fsomcast {

struct ParsedFile {
    std::vector<std::pair<std::string, std::string>> entries;
    std::vector<NodePosition> nodes;
};

namespace io_detail {

inline double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse '" + value + "' as a number");
    }
}

inline long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse '" + value + "' as an integer");
    }
}

inline std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse '" + value + "' as an unsigned integer");
    }
}

inline bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("key '" + key + "': expected true/false, got '" + value + "'");
}

} // namespace io_detail

inline ParsedFile parse_kv_stream(std::istream& in, const std::string& name) {
    ParsedFile parsed;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream tokens(line);
        std::string key;
        if (!(tokens >> key)) continue;
        if (key == "node") {
            NodePosition node;
            if (!(tokens >> node.id >> node.x >> node.y)) {
                throw ConfigError(name + ":" + std::to_string(line_no) +
                                  ": node record needs '<id> <x> <y>'");
            }
            std::string extra;
            if (tokens >> extra) {
                throw ConfigError(name + ":" + std::to_string(line_no) +
                                  ": trailing tokens after node record");
            }
            parsed.nodes.push_back(node);
            continue;
        }
        std::string value;
        if (!(tokens >> value)) {
            throw ConfigError(name + ":" + std::to_string(line_no) +
                              ": key '" + key + "' has no value");
        }
        std::string extra;
        if (tokens >> extra) {
            throw ConfigError(name + ":" + std::to_string(line_no) +
                              ": trailing tokens after '" + key + "'");
        }
        parsed.entries.emplace_back(key, value);
    }
    return parsed;
}

inline ParsedFile parse_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file '" + path + "'");
    return parse_kv_stream(in, path);
}

// Applies one link-parameter key; returns false if the key is not a link key.
inline bool apply_link_key(FsoLinkParams& link, const std::string& key,
                           const std::string& value) {
    using io_detail::parse_double;
    if (key == "transmit_power_w") link.transmit_power_w = parse_double(key, value);
    else if (key == "transmit_power_dbm") link.transmit_power_w = dbm_to_watts(parse_double(key, value));
    else if (key == "aperture_diameter") link.aperture_diameter_m = parse_double(key, value);
    else if (key == "pointing_loss_tx") link.pointing_loss_tx = parse_double(key, value);
    else if (key == "pointing_loss_rx") link.pointing_loss_rx = parse_double(key, value);
    else if (key == "efficiency_tx") link.efficiency_tx = parse_double(key, value);
    else if (key == "efficiency_rx") link.efficiency_rx = parse_double(key, value);
    else if (key == "attenuation_db_per_km") link.attenuation_db_per_km = parse_double(key, value);
    else if (key == "optical_frequency_hz") link.optical_frequency_hz = parse_double(key, value);
    else if (key == "wavelength_nm") link.optical_frequency_hz = wavelength_to_frequency(parse_double(key, value) * 1e-9);
    else if (key == "detector_sensitivity") link.detector_sensitivity = parse_double(key, value);
    else return false;
    return true;
}

inline bool apply_sim_key(SimParams& params, const std::string& key,
                          const std::string& value) {
    using io_detail::parse_bool;
    using io_detail::parse_double;
    using io_detail::parse_int;
    using io_detail::parse_u64;
    if (apply_link_key(params.link, key, value)) return true;
    if (key == "node_count") params.node_count = static_cast<int>(parse_int(key, value));
    else if (key == "rf_range") params.rf_range_m = parse_double(key, value);
    else if (key == "sector") params.sector_rad = parse_double(key, value);
    else if (key == "gps_error") params.gps_error_m = parse_double(key, value);
    else if (key == "max_gps_error") params.max_gps_error_m = parse_double(key, value);
    else if (key == "data_size_bits") params.data_size_bits = parse_double(key, value);
    else if (key == "alignment_delay") params.alignment_delay_s = parse_double(key, value);
    else if (key == "min_node_distance") params.min_node_distance_m = parse_double(key, value);
    else if (key == "cluster_count") params.cluster_count = static_cast<int>(parse_int(key, value));
    else if (key == "cluster_arc_spread") params.cluster_arc_spread_m = parse_double(key, value);
    else if (key == "cluster_radial_spread") params.cluster_radial_spread_m = parse_double(key, value);
    else if (key == "cluster_min_separation") params.cluster_min_separation_rad = parse_double(key, value);
    else if (key == "theta_min") params.theta_min = parse_double(key, value);
    else if (key == "theta_max") params.theta_max = parse_double(key, value);
    else if (key == "charge_first_alignment") params.charge_first_alignment = parse_bool(key, value);
    else if (key == "rf_link_rate_bps") params.rf_link_rate_bps = parse_double(key, value);
    else if (key == "trials") params.trials = static_cast<int>(parse_int(key, value));
    else if (key == "master_seed") params.master_seed = parse_u64(key, value);
    else if (key == "threads") params.threads = static_cast<int>(parse_int(key, value));
    else return false;
    return true;
}

struct ScenarioDocument {
    Scenario scenario;
    FsoLinkParams link;
};

// Scenario files carry the GPS error, optional link overrides, an optional
// sector, and the node records.
inline ScenarioDocument load_scenario_file(const std::string& path,
                                           const FsoLinkParams& base_link) {
    const ParsedFile parsed = parse_kv_file(path);
    if (parsed.nodes.empty()) {
        throw ConfigError(path + ": scenario file has no node records");
    }
    double gps_error = 0.0;
    double sector = kDefaultSector;
    FsoLinkParams link = base_link;
    for (const auto& [key, value] : parsed.entries) {
        if (apply_link_key(link, key, value)) continue;
        if (key == "gps_error") gps_error = io_detail::parse_double(key, value);
        else if (key == "sector") sector = io_detail::parse_double(key, value);
        else throw ConfigError(path + ": unknown scenario key '" + key + "'");
    }
    validate(link);
    return {to_polar_sorted(parsed.nodes, gps_error, sector), link};
}

} // namespace fsomcast
