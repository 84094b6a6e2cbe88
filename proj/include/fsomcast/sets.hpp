#pragma once

#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "fsomcast/errors.hpp"
#include "fsomcast/geometry.hpp"
#include "fsomcast/link.hpp"

namespace fsomcast {

struct SolverConfig {
    double data_size_bits = 8e11; // 100 GB
    double alignment_delay_s = 2.0;
    double theta_min = 1e-3;
    double theta_max = std::numbers::pi / 2.0;
    // Charge the alignment delay on every set, including the first. When
    // false, the first set's alignment is free and a plan with k sets pays
    // only (k - 1) alignments.
    bool charge_first_alignment = true;
    FsoLinkParams link{};
};

inline void validate(const SolverConfig& c) {
    if (!(c.data_size_bits > 0.0)) throw InvalidParamsError("data size must be > 0");
    if (!(c.alignment_delay_s >= 0.0)) throw InvalidParamsError("alignment delay must be >= 0");
    if (!(c.theta_min > 0.0)) throw InvalidParamsError("theta_min must be > 0");
    if (!(c.theta_min < c.theta_max)) throw InvalidParamsError("theta_min must be < theta_max");
    validate(c.link);
}

// A run of azimuth-adjacent nodes [first..last] served by one transmission,
// with its covering divergence angle and cached delivery delay.
struct ContiguousSet {
    std::size_t first = 0;
    std::size_t last = 0;
    double theta = 0.0;
    double delay = 0.0;
};

// Delivery delay of the contiguous set [first..last]: worst member
// transmission time at the set's covering angle, plus one alignment delay.
inline double set_delay(const Scenario& scenario, std::size_t first,
                        std::size_t last, const SolverConfig& config) {
    const double theta = covering_angle(scenario, first, last, config.theta_min);
    if (theta > config.theta_max) {
        throw InfeasibleSetError("set [" + std::to_string(first) + ".." +
                                 std::to_string(last) + "] needs divergence " +
                                 std::to_string(theta) + " rad > theta_max");
    }
    double worst = 0.0;
    for (std::size_t j = first; j <= last; ++j) {
        const double t = config.data_size_bits /
                         data_rate(config.link, theta, scenario.nodes[j].distance);
        worst = std::max(worst, t);
    }
    return worst + config.alignment_delay_s;
}

inline ContiguousSet make_set(const Scenario& scenario, std::size_t first,
                              std::size_t last, const SolverConfig& config) {
    return {first, last, covering_angle(scenario, first, last, config.theta_min),
            set_delay(scenario, first, last, config)};
}

// All contiguous candidate sets whose covering angle fits theta_max, each
// priced. With nothing excluded this is exactly N*(N+1)/2 sets. Extending a
// range can only widen the covering angle, so each row stops at the first
// infeasible extension.
inline std::vector<ContiguousSet> enumerate_sets(const Scenario& scenario,
                                                 const SolverConfig& config) {
    const std::size_t n = scenario.size();
    std::vector<ContiguousSet> sets;
    sets.reserve(n * (n + 1) / 2);
    for (std::size_t first = 0; first < n; ++first) {
        double hi = scenario.nodes[first].azimuth + scenario.nodes[first].half_angle;
        double lo = scenario.nodes[first].azimuth - scenario.nodes[first].half_angle;
        for (std::size_t last = first; last < n; ++last) {
            hi = std::max(hi, scenario.nodes[last].azimuth + scenario.nodes[last].half_angle);
            lo = std::min(lo, scenario.nodes[last].azimuth - scenario.nodes[last].half_angle);
            if (std::max(config.theta_min, hi - lo) > config.theta_max) break;
            sets.push_back(make_set(scenario, first, last, config));
        }
    }
    return sets;
}

} // namespace fsomcast
