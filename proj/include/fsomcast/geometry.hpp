#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "fsomcast/errors.hpp"

namespace fsomcast {

inline constexpr double kDefaultSector = std::numbers::pi / 2.0;

// Receiver location in meters, transmitter fixed at the origin.
struct NodePosition {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
};

// Transmitter-centric polar form. half_angle is the tangent half-angle of
// the GPS uncertainty disk as seen from the origin: asin(r / distance).
struct PolarNode {
    int id = 0;
    double azimuth = 0.0;    // radians in [0, 2*pi)
    double distance = 0.0;   // meters, > 0
    double half_angle = 0.0; // radians, >= 0
};

// Nodes sorted by strictly descending azimuth (ties: ascending distance,
// then ascending id). Every node's angular footprint [azimuth - beta,
// azimuth + beta] lies inside [0, sector_span].
struct Scenario {
    std::vector<PolarNode> nodes;
    double gps_error = 0.0;
    double sector_span = kDefaultSector;

    std::size_t size() const { return nodes.size(); }
};

// Counterclockwise angle from the positive x axis, in [0, 2*pi).
inline double azimuth(const NodePosition& position) {
    if (position.x == 0.0 && position.y == 0.0) {
        throw DegeneratePositionError("node " + std::to_string(position.id) +
                                      " coincides with the transmitter origin");
    }
    double phi = std::atan2(position.y, position.x);
    if (phi < 0.0) phi += 2.0 * std::numbers::pi;
    return phi;
}

inline double uncertainty_half_angle(double distance, double gps_error) {
    if (gps_error < 0.0) {
        throw InvalidParamsError("gps_error must be >= 0");
    }
    if (gps_error >= distance) {
        throw GpsErrorTooLargeError("gps_error " + std::to_string(gps_error) +
                                    " m must be smaller than node distance " +
                                    std::to_string(distance) + " m");
    }
    return std::asin(gps_error / distance);
}

inline NodePosition to_cartesian(const PolarNode& node) {
    return {node.id, node.distance * std::cos(node.azimuth),
            node.distance * std::sin(node.azimuth)};
}

inline Scenario to_polar_sorted(std::span<const NodePosition> positions,
                                double gps_error,
                                double sector = kDefaultSector) {
    if (positions.empty()) {
        throw InvalidParamsError("scenario requires at least one node");
    }
    if (!(sector > 0.0) || sector > 2.0 * std::numbers::pi) {
        throw InvalidParamsError("sector must lie in (0, 2*pi]");
    }
    Scenario scenario;
    scenario.gps_error = gps_error;
    scenario.sector_span = sector;
    scenario.nodes.reserve(positions.size());
    for (const NodePosition& p : positions) {
        PolarNode node;
        node.id = p.id;
        node.azimuth = azimuth(p);
        node.distance = std::hypot(p.x, p.y);
        node.half_angle = uncertainty_half_angle(node.distance, gps_error);
        if (node.azimuth - node.half_angle < 0.0 ||
            node.azimuth + node.half_angle > sector) {
            throw InvalidParamsError(
                "node " + std::to_string(p.id) +
                " angular footprint falls outside the sector [0, " +
                std::to_string(sector) + "]");
        }
        scenario.nodes.push_back(node);
    }
    std::sort(scenario.nodes.begin(), scenario.nodes.end(),
              [](const PolarNode& a, const PolarNode& b) {
                  if (a.azimuth != b.azimuth) return a.azimuth > b.azimuth;
                  if (a.distance != b.distance) return a.distance < b.distance;
                  return a.id < b.id;
              });
    return scenario;
}

// Minimum divergence angle whose footprint contains every member's
// uncertainty interval, floored at theta_min. The union bound has to scan
// all members: a near node in the middle of the range can have a wider
// footprint than either endpoint.
inline double covering_angle(const Scenario& scenario, std::size_t first,
                             std::size_t last, double theta_min) {
    if (first > last || last >= scenario.nodes.size()) {
        throw std::out_of_range("covering_angle: invalid node range");
    }
    if (!(theta_min > 0.0)) {
        throw InvalidParamsError("theta_min must be > 0");
    }
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t j = first; j <= last; ++j) {
        const PolarNode& n = scenario.nodes[j];
        hi = std::max(hi, n.azimuth + n.half_angle);
        lo = std::min(lo, n.azimuth - n.half_angle);
    }
    return std::max(theta_min, hi - lo);
}

} // namespace fsomcast
