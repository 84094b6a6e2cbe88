#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "fsomcast/errors.hpp"
#include "fsomcast/sets.hpp"

namespace fsomcast {

enum class Strategy {
    ExactBnb,
    ExactDp,
    Greedy,
    Broadcast,
    MultiUnicast,
};

inline constexpr std::array<Strategy, 5> kAllStrategies = {
    Strategy::ExactBnb, Strategy::ExactDp, Strategy::Greedy,
    Strategy::Broadcast, Strategy::MultiUnicast};

inline std::string_view strategy_tag(Strategy s) {
    switch (s) {
        case Strategy::ExactBnb: return "exact-bnb";
        case Strategy::ExactDp: return "exact-dp";
        case Strategy::Greedy: return "greedy";
        case Strategy::Broadcast: return "broadcast";
        case Strategy::MultiUnicast: return "multi-unicast";
    }
    return "unknown";
}

inline std::optional<Strategy> strategy_from_tag(std::string_view tag) {
    for (Strategy s : kAllStrategies) {
        if (strategy_tag(s) == tag) return s;
    }
    return std::nullopt;
}

// An ordered cover of all node indices. total_delay already honors
// SolverConfig::charge_first_alignment.
struct MulticastPlan {
    Strategy strategy = Strategy::ExactDp;
    std::vector<ContiguousSet> sets;
    double total_delay = 0.0;
};

namespace detail {

inline double raw_total(const std::vector<ContiguousSet>& sets) {
    double total = 0.0;
    for (const ContiguousSet& s : sets) total += s.delay;
    return total;
}

inline MulticastPlan finalize_plan(Strategy strategy,
                                   std::vector<ContiguousSet> sets,
                                   const SolverConfig& config) {
    MulticastPlan plan;
    plan.strategy = strategy;
    plan.total_delay = raw_total(sets);
    if (!config.charge_first_alignment && !sets.empty()) {
        plan.total_delay -= config.alignment_delay_s;
    }
    plan.sets = std::move(sets);
    return plan;
}

inline void require_singletons_feasible(const Scenario& scenario,
                                        const SolverConfig& config) {
    for (std::size_t i = 0; i < scenario.size(); ++i) {
        if (covering_angle(scenario, i, i, config.theta_min) > config.theta_max) {
            throw InfeasibleScenarioError(
                "node index " + std::to_string(i) +
                " cannot be reached: its singleton divergence exceeds theta_max");
        }
    }
}

// Dense per-range delay table; NaN marks ranges excluded by theta_max.
inline std::vector<std::vector<double>> delay_table(
    std::size_t n, const std::vector<ContiguousSet>& sets) {
    std::vector<std::vector<double>> cost(
        n, std::vector<double>(n, std::numeric_limits<double>::quiet_NaN()));
    for (const ContiguousSet& s : sets) cost[s.first][s.last] = s.delay;
    return cost;
}

} // namespace detail

inline MulticastPlan solve_multiple_unicast(const Scenario& scenario,
                                            const SolverConfig& config) {
    detail::require_singletons_feasible(scenario, config);
    std::vector<ContiguousSet> sets;
    sets.reserve(scenario.size());
    for (std::size_t i = 0; i < scenario.size(); ++i) {
        sets.push_back(make_set(scenario, i, i, config));
    }
    return detail::finalize_plan(Strategy::MultiUnicast, std::move(sets), config);
}

inline MulticastPlan solve_naive_broadcast(const Scenario& scenario,
                                           const SolverConfig& config) {
    const std::size_t n = scenario.size();
    if (covering_angle(scenario, 0, n - 1, config.theta_min) > config.theta_max) {
        throw InfeasibleScenarioError(
            "broadcast needs a divergence angle above theta_max");
    }
    std::vector<ContiguousSet> sets{make_set(scenario, 0, n - 1, config)};
    return detail::finalize_plan(Strategy::Broadcast, std::move(sets), config);
}

struct GreedyTrace {
    MulticastPlan plan;
    std::size_t comparisons = 0;
};

// Pairwise greedy accumulation in descending-azimuth order. For each
// adjacent pair the pair-set delay (including its alignment charge) is
// compared against the two unicast transmission times plus one alignment
// delay; a strict win merges, anything else starts a new set. Emitted sets
// are priced over their full extent only at the end.
inline GreedyTrace solve_greedy_traced(const Scenario& scenario,
                                       const SolverConfig& config) {
    const std::size_t n = scenario.size();
    std::vector<double> unicast(n); // transmission only, no alignment
    for (std::size_t i = 0; i < n; ++i) {
        const double theta = covering_angle(scenario, i, i, config.theta_min);
        unicast[i] = config.data_size_bits /
                     data_rate(config.link, theta, scenario.nodes[i].distance);
    }
    GreedyTrace trace;
    std::vector<ContiguousSet> sets;
    std::size_t start = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double pair_delay = std::numeric_limits<double>::infinity();
        if (covering_angle(scenario, i, i + 1, config.theta_min) <= config.theta_max) {
            pair_delay = set_delay(scenario, i, i + 1, config);
        }
        ++trace.comparisons;
        if (pair_delay < unicast[i] + unicast[i + 1] + config.alignment_delay_s) {
            continue; // node i+1 joins the running set
        }
        sets.push_back({start, i, 0.0, 0.0});
        start = i + 1;
    }
    sets.push_back({start, n - 1, 0.0, 0.0});
    try {
        for (ContiguousSet& s : sets) s = make_set(scenario, s.first, s.last, config);
    } catch (const InfeasibleSetError& e) {
        // Pairwise merges cannot see the accumulated span exceeding theta_max.
        throw InfeasibleScenarioError(std::string("greedy plan infeasible: ") + e.what());
    }
    trace.plan = detail::finalize_plan(Strategy::Greedy, std::move(sets), config);
    return trace;
}

inline MulticastPlan solve_greedy(const Scenario& scenario,
                                  const SolverConfig& config) {
    return solve_greedy_traced(scenario, config).plan;
}

// Minimum-delay partition into contiguous sets via a left-to-right dynamic
// program over prefix boundaries. Because set delay is monotone under range
// extension, any overlapping cover can be trimmed to a partition of no
// greater cost, so this optimum matches the branch-and-bound cover optimum.
inline MulticastPlan solve_exact_dp(const Scenario& scenario,
                                    const SolverConfig& config) {
    detail::require_singletons_feasible(scenario, config);
    const std::size_t n = scenario.size();
    const auto sets = enumerate_sets(scenario, config);
    const auto cost = detail::delay_table(n, sets);

    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> best(n + 1, kInf);
    std::vector<std::size_t> split(n + 1, 0);
    best[0] = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
        for (std::size_t a = 0; a < j; ++a) {
            const double c = cost[a][j - 1];
            if (std::isnan(c)) continue;
            if (best[a] + c < best[j]) {
                best[j] = best[a] + c;
                split[j] = a;
            }
        }
    }
    std::vector<ContiguousSet> chosen;
    for (std::size_t j = n; j > 0; j = split[j]) {
        chosen.push_back(make_set(scenario, split[j], j - 1, config));
    }
    std::reverse(chosen.begin(), chosen.end());
    return detail::finalize_plan(Strategy::ExactDp, std::move(chosen), config);
}

// Depth-first branch and bound over the leftmost-uncovered node: branch on
// every feasible set containing it (overlapping covers allowed), bound with
// the dearest remaining singleton and a per-node cheapest-share sum, seed
// the incumbent with the greedy plan.
inline MulticastPlan solve_exact_bnb(const Scenario& scenario,
                                     const SolverConfig& config) {
    detail::require_singletons_feasible(scenario, config);
    const std::size_t n = scenario.size();
    const auto sets = enumerate_sets(scenario, config);

    std::vector<std::vector<std::size_t>> containing(n);
    for (std::size_t s = 0; s < sets.size(); ++s) {
        for (std::size_t j = sets[s].first; j <= sets[s].last; ++j) {
            containing[j].push_back(s);
        }
    }

    // lower_bound[j] is a valid bound on the cost of covering [j..n): the
    // most expensive remaining singleton (any covering set costs at least as
    // much), and the sum over remaining nodes of their cheapest per-node
    // share min(delay/|set|).
    std::vector<double> share(n, std::numeric_limits<double>::infinity());
    for (const ContiguousSet& s : sets) {
        const double per_node = s.delay / static_cast<double>(s.last - s.first + 1);
        for (std::size_t j = s.first; j <= s.last; ++j) {
            share[j] = std::min(share[j], per_node);
        }
    }
    std::vector<double> singleton(n);
    for (std::size_t j = 0; j < n; ++j) {
        singleton[j] = set_delay(scenario, j, j, config);
    }
    std::vector<double> lower_bound(n + 1, 0.0);
    double suffix_max = 0.0;
    double suffix_share = 0.0;
    for (std::size_t j = n; j > 0; --j) {
        suffix_max = std::max(suffix_max, singleton[j - 1]);
        suffix_share += share[j - 1];
        lower_bound[j - 1] = std::max(suffix_max, suffix_share);
    }

    std::vector<ContiguousSet> incumbent_sets;
    try {
        incumbent_sets = solve_greedy(scenario, config).sets;
    } catch (const InfeasibleScenarioError&) {
        incumbent_sets = solve_multiple_unicast(scenario, config).sets;
    }
    double incumbent = detail::raw_total(incumbent_sets);

    std::vector<std::size_t> stack;
    auto dfs = [&](auto&& self, std::size_t next, double cost) -> void {
        if (next >= n) {
            if (cost < incumbent) {
                incumbent = cost;
                incumbent_sets.clear();
                incumbent_sets.reserve(stack.size());
                for (std::size_t s : stack) incumbent_sets.push_back(sets[s]);
            }
            return;
        }
        if (cost + lower_bound[next] >= incumbent) return;
        for (std::size_t s : containing[next]) {
            stack.push_back(s);
            self(self, sets[s].last + 1, cost + sets[s].delay);
            stack.pop_back();
        }
    };
    dfs(dfs, 0, 0.0);
    return detail::finalize_plan(Strategy::ExactBnb, std::move(incumbent_sets),
                                 config);
}

inline MulticastPlan solve(Strategy strategy, const Scenario& scenario,
                           const SolverConfig& config) {
    switch (strategy) {
        case Strategy::ExactBnb: return solve_exact_bnb(scenario, config);
        case Strategy::ExactDp: return solve_exact_dp(scenario, config);
        case Strategy::Greedy: return solve_greedy(scenario, config);
        case Strategy::Broadcast: return solve_naive_broadcast(scenario, config);
        case Strategy::MultiUnicast: return solve_multiple_unicast(scenario, config);
    }
    throw InvalidParamsError("unknown strategy");
}

struct PlanMetrics {
    double total_delay = 0.0;
    double average_throughput = 0.0; // bits/s per receiver
};

// Aggregate throughput is N*P over the plan duration; averaging over the N
// receivers leaves P / total_delay.
inline PlanMetrics plan_metrics(const MulticastPlan& plan,
                                const Scenario& scenario,
                                const SolverConfig& config) {
    const double aggregate = static_cast<double>(scenario.size()) *
                             config.data_size_bits / plan.total_delay;
    return {plan.total_delay, aggregate / static_cast<double>(scenario.size())};
}

// Reference optimum by exhaustive recursion over all covers: at each step
// choose any feasible set containing the leftmost uncovered node. No
// bounding or pruning; guarded to small instances.
inline double exhaustive_min_cover_delay(const Scenario& scenario,
                                         const SolverConfig& config,
                                         std::size_t max_nodes = 12) {
    const std::size_t n = scenario.size();
    if (n > max_nodes) {
        throw InvalidParamsError("exhaustive search capped at " +
                                 std::to_string(max_nodes) + " nodes");
    }
    detail::require_singletons_feasible(scenario, config);
    const auto sets = enumerate_sets(scenario, config);
    std::vector<std::vector<std::size_t>> containing(n);
    for (std::size_t s = 0; s < sets.size(); ++s) {
        for (std::size_t j = sets[s].first; j <= sets[s].last; ++j) {
            containing[j].push_back(s);
        }
    }
    double best = std::numeric_limits<double>::infinity();
    auto rec = [&](auto&& self, std::size_t next, double cost) -> void {
        if (next >= n) {
            best = std::min(best, cost);
            return;
        }
        for (std::size_t s : containing[next]) {
            self(self, sets[s].last + 1, cost + sets[s].delay);
        }
    };
    rec(rec, 0, 0.0);
    if (!config.charge_first_alignment) best -= config.alignment_delay_s;
    return best;
}

} // namespace fsomcast
