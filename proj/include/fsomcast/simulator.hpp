#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numbers>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "fsomcast/errors.hpp"
#include "fsomcast/geometry.hpp"
#include "fsomcast/solvers.hpp"

namespace fsomcast {

// Scenario generation and trial parameters. Receivers are placed in groups:
// cluster centers fall uniformly (by area) over the annular sector between
// min_node_distance and rf_range, kept a minimum azimuth apart, and each
// node jitters around its center. cluster_count = 0 disables grouping and
// scatters nodes uniformly over the whole annular sector.
//
// The sector margin that keeps every uncertainty footprint inside
// [0, sector] is derived from max_gps_error, not the current gps_error, so
// node positions are identical across a GPS-error sweep.
struct SimParams {
    int node_count = 15;
    double rf_range_m = 150.0;
    double sector_rad = std::numbers::pi / 2.0;
    double gps_error_m = 3.0;
    double max_gps_error_m = 5.0;
    double data_size_bits = 8e11; // 100 GB
    double alignment_delay_s = 2.0;
    double min_node_distance_m = 40.0;
    int cluster_count = 6;
    double cluster_arc_spread_m = 0.3;
    double cluster_radial_spread_m = 3.0;
    double cluster_min_separation_rad = 0.06;
    double theta_min = 1e-3;
    double theta_max = std::numbers::pi / 2.0;
    bool charge_first_alignment = true;
    double rf_link_rate_bps = 8.67e8; // control channel; informational only
    FsoLinkParams link{};
    int trials = 5000;
    std::uint64_t master_seed = 42;
    int threads = 1;
};

inline void validate(const SimParams& p) {
    if (p.node_count < 1) throw InvalidParamsError("node_count must be >= 1");
    if (p.trials < 1) throw InvalidParamsError("trials must be >= 1");
    if (p.threads < 1) throw InvalidParamsError("threads must be >= 1");
    if (!(p.gps_error_m >= 0.0)) throw InvalidParamsError("gps_error must be >= 0");
    if (p.gps_error_m > p.max_gps_error_m)
        throw InvalidParamsError("gps_error must not exceed max_gps_error");
    if (!(p.max_gps_error_m < p.min_node_distance_m))
        throw InvalidParamsError("max_gps_error must be smaller than min_node_distance");
    if (!(p.min_node_distance_m < p.rf_range_m))
        throw InvalidParamsError("min_node_distance must be smaller than rf_range");
    if (!(p.sector_rad > 0.0) || p.sector_rad > 2.0 * std::numbers::pi)
        throw InvalidParamsError("sector must lie in (0, 2*pi]");
    const double margin = std::asin(p.max_gps_error_m / p.min_node_distance_m);
    if (!(p.sector_rad - 2.0 * margin > 0.0))
        throw InvalidParamsError("sector too narrow for the uncertainty margin");
    if (p.cluster_count < 0) throw InvalidParamsError("cluster_count must be >= 0");
    if (p.cluster_count > 0) {
        if (!(p.cluster_arc_spread_m >= 0.0) || !(p.cluster_radial_spread_m >= 0.0))
            throw InvalidParamsError("cluster spreads must be >= 0");
        if (!(p.cluster_min_separation_rad >= 0.0))
            throw InvalidParamsError("cluster separation must be >= 0");
        if (!(p.min_node_distance_m + 2.0 * p.cluster_radial_spread_m < p.rf_range_m))
            throw InvalidParamsError("cluster radial spread too large for the annulus");
    }
    SolverConfig solver;
    solver.data_size_bits = p.data_size_bits;
    solver.alignment_delay_s = p.alignment_delay_s;
    solver.theta_min = p.theta_min;
    solver.theta_max = p.theta_max;
    solver.link = p.link;
    validate(solver);
}

inline SolverConfig solver_config(const SimParams& p) {
    SolverConfig c;
    c.data_size_bits = p.data_size_bits;
    c.alignment_delay_s = p.alignment_delay_s;
    c.theta_min = p.theta_min;
    c.theta_max = p.theta_max;
    c.charge_first_alignment = p.charge_first_alignment;
    c.link = p.link;
    return c;
}

// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Splittable per-trial seed: parallel and serial runs draw from identical
// streams.
inline std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    return mix64(master_seed + 0x9e3779b97f4a7c15ull * (trial_index + 1));
}

// Minimal xorshift-based generator so draws are identical across standard
// libraries and platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix64(state_);
    }

    double uniform01() { // [0, 1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

namespace detail {

// Area-uniform radius over the annulus [lo, hi].
inline double annulus_radius(double u, double lo, double hi) {
    return std::sqrt(u * (hi * hi - lo * lo) + lo * lo);
}

} // namespace detail

inline Scenario generate_scenario(const SimParams& params,
                                  std::uint64_t trial_index) {
    validate(params);
    SplitMix64 rng(trial_seed(params.master_seed, trial_index));
    const double margin =
        std::asin(params.max_gps_error_m / params.min_node_distance_m);
    const double usable = params.sector_rad - 2.0 * margin;

    std::vector<NodePosition> positions;
    positions.reserve(static_cast<std::size_t>(params.node_count));

    if (params.cluster_count == 0) {
        for (int i = 0; i < params.node_count; ++i) {
            const double distance = detail::annulus_radius(
                rng.uniform01(), params.min_node_distance_m, params.rf_range_m);
            const double phi = margin + rng.uniform01() * usable;
            positions.push_back(
                {i, distance * std::cos(phi), distance * std::sin(phi)});
        }
    } else {
        struct Center { double phi; double distance; };
        std::vector<Center> centers;
        centers.reserve(static_cast<std::size_t>(params.cluster_count));
        const double radial_lo = params.min_node_distance_m + params.cluster_radial_spread_m;
        const double radial_hi = params.rf_range_m - params.cluster_radial_spread_m;
        for (int c = 0; c < params.cluster_count; ++c) {
            Center center{0.0, 0.0};
            for (int attempt = 0; attempt < 100; ++attempt) {
                center.distance = detail::annulus_radius(rng.uniform01(), radial_lo, radial_hi);
                const double jitter = params.cluster_arc_spread_m / center.distance;
                center.phi = (margin + jitter) +
                             rng.uniform01() * (usable - 2.0 * jitter);
                bool clear = true;
                for (const Center& other : centers) {
                    if (std::abs(center.phi - other.phi) < params.cluster_min_separation_rad) {
                        clear = false;
                        break;
                    }
                }
                if (clear) break; // best effort; keep the last draw otherwise
            }
            centers.push_back(center);
        }
        for (int i = 0; i < params.node_count; ++i) {
            const Center& c =
                centers[rng.below(static_cast<std::uint64_t>(params.cluster_count))];
            const double arc = (2.0 * rng.uniform01() - 1.0) * params.cluster_arc_spread_m;
            const double radial = (2.0 * rng.uniform01() - 1.0) * params.cluster_radial_spread_m;
            const double phi = c.phi + arc / c.distance;
            const double distance = c.distance + radial;
            positions.push_back(
                {i, distance * std::cos(phi), distance * std::sin(phi)});
        }
    }
    return to_polar_sorted(positions, params.gps_error_m, params.sector_rad);
}

struct StrategyMetrics {
    Strategy strategy = Strategy::ExactDp;
    double total_delay = 0.0;
    double average_throughput = 0.0;
    double solver_wall_time = 0.0; // seconds, excluded from determinism
};

struct TrialResult {
    std::uint64_t trial_index = 0;
    std::vector<StrategyMetrics> metrics;
};

// One seeded trial: generate the scenario, run every requested solver, and
// time each solve with a monotonic clock. Scenario generation and metric
// bookkeeping stay outside the timed region; candidate-set enumeration runs
// inside the solvers that need it and is charged to them.
inline TrialResult run_trial(const SimParams& params, std::uint64_t trial_index,
                             std::span<const Strategy> strategies) {
    const Scenario scenario = generate_scenario(params, trial_index);
    const SolverConfig config = solver_config(params);

    TrialResult result;
    result.trial_index = trial_index;
    result.metrics.reserve(strategies.size());
    for (Strategy strategy : strategies) {
        const auto start = std::chrono::steady_clock::now();
        const MulticastPlan plan = solve(strategy, scenario, config);
        const auto stop = std::chrono::steady_clock::now();
        const PlanMetrics m = plan_metrics(plan, scenario, config);
        result.metrics.push_back(
            {strategy, m.total_delay, m.average_throughput,
             std::chrono::duration<double>(stop - start).count()});
    }
    return result;
}

enum class SweepAxis { DataSize, GpsError, AlignmentDelay, NodeCount };

inline std::string_view axis_tag(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::DataSize: return "data_size";
        case SweepAxis::GpsError: return "gps_error";
        case SweepAxis::AlignmentDelay: return "alignment_delay";
        case SweepAxis::NodeCount: return "node_count";
    }
    return "unknown";
}

inline std::optional<SweepAxis> axis_from_tag(std::string_view tag) {
    for (SweepAxis a : {SweepAxis::DataSize, SweepAxis::GpsError,
                        SweepAxis::AlignmentDelay, SweepAxis::NodeCount}) {
        if (axis_tag(a) == tag) return a;
    }
    return std::nullopt;
}

inline SimParams with_axis_value(const SimParams& base, SweepAxis axis, double value) {
    SimParams p = base;
    switch (axis) {
        case SweepAxis::DataSize: p.data_size_bits = value; break;
        case SweepAxis::GpsError: p.gps_error_m = value; break;
        case SweepAxis::AlignmentDelay: p.alignment_delay_s = value; break;
        case SweepAxis::NodeCount:
            p.node_count = static_cast<int>(std::llround(value));
            break;
    }
    return p;
}

struct SweepResult {
    SweepAxis axis = SweepAxis::DataSize;
    double axis_value = 0.0;
    int trials = 0;
    std::vector<StrategyMetrics> means; // per strategy, in request order
};

namespace detail {

// Runs all trials for one parameter point, optionally across threads.
// Results land in a trial-indexed vector and are averaged in trial order,
// so the aggregate is bitwise identical however the work is scheduled.
inline std::vector<TrialResult> run_trials(const SimParams& params,
                                           std::span<const Strategy> strategies) {
    std::vector<TrialResult> results(static_cast<std::size_t>(params.trials));
    const int worker_count = std::min(params.threads, params.trials);
    if (worker_count <= 1) {
        for (int t = 0; t < params.trials; ++t) {
            results[static_cast<std::size_t>(t)] =
                run_trial(params, static_cast<std::uint64_t>(t), strategies);
        }
        return results;
    }
    std::vector<std::thread> workers;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (int w = 0; w < worker_count; ++w) {
        workers.emplace_back([&, w] {
            try {
                for (int t = w; t < params.trials; t += worker_count) {
                    results[static_cast<std::size_t>(t)] =
                        run_trial(params, static_cast<std::uint64_t>(t), strategies);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (std::thread& worker : workers) worker.join();
    if (failure) std::rethrow_exception(failure);
    return results;
}

inline std::vector<StrategyMetrics> mean_metrics(
    const std::vector<TrialResult>& results,
    std::span<const Strategy> strategies) {
    std::vector<StrategyMetrics> means(strategies.size());
    for (std::size_t s = 0; s < strategies.size(); ++s) {
        means[s].strategy = strategies[s];
    }
    for (const TrialResult& trial : results) {
        for (std::size_t s = 0; s < strategies.size(); ++s) {
            means[s].total_delay += trial.metrics[s].total_delay;
            means[s].average_throughput += trial.metrics[s].average_throughput;
            means[s].solver_wall_time += trial.metrics[s].solver_wall_time;
        }
    }
    const double count = static_cast<double>(results.size());
    for (StrategyMetrics& m : means) {
        m.total_delay /= count;
        m.average_throughput /= count;
        m.solver_wall_time /= count;
    }
    return means;
}

} // namespace detail

// Sweeps one parameter axis. Trial seeds are shared across axis values for
// variance reduction: trial t uses the same RNG stream at every point.
inline std::vector<SweepResult> run_sweep(const SimParams& base, SweepAxis axis,
                                          std::span<const double> values,
                                          std::span<const Strategy> strategies) {
    if (values.empty()) throw InvalidParamsError("sweep needs at least one axis value");
    if (strategies.empty()) throw InvalidParamsError("sweep needs at least one strategy");
    std::vector<SweepResult> sweep;
    sweep.reserve(values.size());
    for (double value : values) {
        const SimParams point = with_axis_value(base, axis, value);
        validate(point);
        const auto results = detail::run_trials(point, strategies);
        sweep.push_back(
            {axis, value, point.trials, detail::mean_metrics(results, strategies)});
    }
    return sweep;
}

} // namespace fsomcast
