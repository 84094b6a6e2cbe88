#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fsomcast/errors.hpp"
#include "fsomcast/scenario_io.hpp"
#include "fsomcast/simulator.hpp"
#include "fsomcast/solvers.hpp"

namespace fsomcast {

// Exit codes: 0 success, 1 oracle disagreement or internal failure,
// 2 configuration error, 3 infeasible scenario.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInfeasible = 3;

struct RunConfig {
    std::string command;
    std::string config_path;
    std::string axis;
    std::string values;
    std::string strategies;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;

    SimParams params;
    std::string scenario_file;
    int bruteforce_cap = 8;
    double corrupt_cost = 1.0; // test hook for the oracle-check harness
};

namespace cli_detail {

// All numeric CSV fields print with 9 significant digits.
inline std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

inline std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::string current;
    for (char c : text) {
        if (c == ',') {
            out.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty() || !out.empty()) out.push_back(current);
    return out;
}

inline std::vector<Strategy> parse_strategies(const std::string& text) {
    if (text.empty()) {
        return {kAllStrategies.begin(), kAllStrategies.end()};
    }
    std::vector<Strategy> strategies;
    for (const std::string& tag : split_csv(text)) {
        const auto s = strategy_from_tag(tag);
        if (!s) throw ConfigError("unknown strategy '" + tag + "'");
        strategies.push_back(*s);
    }
    return strategies;
}

inline std::vector<double> parse_values(const std::string& text) {
    if (text.empty()) throw ConfigError("--values is required for this command");
    std::vector<double> values;
    for (const std::string& item : split_csv(text)) {
        values.push_back(io_detail::parse_double("--values", item));
    }
    return values;
}

inline void load_config_file(RunConfig& run) {
    if (run.config_path.empty()) return;
    const ParsedFile parsed = parse_kv_file(run.config_path);
    if (!parsed.nodes.empty()) {
        throw ConfigError(run.config_path +
                          ": node records belong in a scenario file, not the config");
    }
    for (const auto& [key, value] : parsed.entries) {
        if (apply_sim_key(run.params, key, value)) continue;
        if (key == "scenario_file") run.scenario_file = value;
        else if (key == "bruteforce_cap") run.bruteforce_cap = static_cast<int>(io_detail::parse_int(key, value));
        else if (key == "corrupt_cost") run.corrupt_cost = io_detail::parse_double(key, value);
        else throw ConfigError(run.config_path + ": unknown config key '" + key + "'");
    }
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write output file '" + path + "'");
    return out;
}

inline double degrees(double radians) { return radians * 180.0 / std::numbers::pi; }

inline void write_plan_rows(std::ostream& out, const MulticastPlan& plan,
                            const PlanMetrics& metrics) {
    for (std::size_t i = 0; i < plan.sets.size(); ++i) {
        const ContiguousSet& s = plan.sets[i];
        out << strategy_tag(plan.strategy) << ',' << i << ',' << s.first << ','
            << s.last << ',' << fmt9(s.theta) << ',' << fmt9(s.delay) << ','
            << fmt9(metrics.total_delay) << ',' << fmt9(metrics.average_throughput)
            << '\n';
    }
}

inline int cmd_solve(const RunConfig& run) {
    Scenario scenario;
    SolverConfig config = solver_config(run.params);
    if (!run.scenario_file.empty()) {
        ScenarioDocument doc = load_scenario_file(run.scenario_file, run.params.link);
        scenario = std::move(doc.scenario);
        config.link = doc.link;
    } else {
        validate(run.params);
        scenario = generate_scenario(run.params, 0);
    }
    const std::vector<Strategy> strategies = parse_strategies(run.strategies);

    std::vector<MulticastPlan> plans;
    plans.reserve(strategies.size());
    for (Strategy s : strategies) plans.push_back(solve(s, scenario, config));

    std::cout << "scenario: " << scenario.size() << " nodes, gps error "
              << scenario.gps_error << " m, data "
              << config.data_size_bits / 8e9 << " GB, alignment "
              << config.alignment_delay_s << " s\n";
    for (const MulticastPlan& plan : plans) {
        const PlanMetrics m = plan_metrics(plan, scenario, config);
        std::cout << strategy_tag(plan.strategy) << ": " << plan.sets.size()
                  << " set(s), total delay " << fmt9(m.total_delay)
                  << " s, avg throughput " << fmt9(m.average_throughput / 8e9)
                  << " GB/s\n";
        for (const ContiguousSet& s : plan.sets) {
            std::cout << "  [" << s.first << ".." << s.last << "]  theta "
                      << fmt9(degrees(s.theta)) << " deg  delay " << fmt9(s.delay)
                      << " s\n";
        }
    }
    if (!run.out_path.empty()) {
        std::ofstream out = open_output(run.out_path);
        out << "# fsomcast plan schema v1\n"
            << "strategy,set_index,first,last,theta_rad,set_delay_s,"
               "total_delay_s,avg_throughput_bps\n";
        for (const MulticastPlan& plan : plans) {
            write_plan_rows(out, plan, plan_metrics(plan, scenario, config));
        }
    }
    return kExitOk;
}

inline void write_sweep_csv(std::ostream& out,
                            const std::vector<SweepResult>& sweep) {
    out << "# fsomcast sweep schema v1\n"
        << "axis_name,axis_value,strategy,trials,mean_delay_s,"
           "mean_avg_throughput_bps,mean_solver_time_s\n";
    struct Row {
        double axis_value;
        std::string strategy;
        std::string line;
    };
    std::vector<Row> rows;
    for (const SweepResult& point : sweep) {
        for (const StrategyMetrics& m : point.means) {
            Row row;
            row.axis_value = point.axis_value;
            row.strategy = std::string(strategy_tag(m.strategy));
            row.line = std::string(axis_tag(point.axis)) + ',' +
                       fmt9(point.axis_value) + ',' + row.strategy + ',' +
                       std::to_string(point.trials) + ',' + fmt9(m.total_delay) +
                       ',' + fmt9(m.average_throughput) + ',' +
                       fmt9(m.solver_wall_time);
            rows.push_back(std::move(row));
        }
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.axis_value != b.axis_value) return a.axis_value < b.axis_value;
        return a.strategy < b.strategy;
    });
    for (const Row& row : rows) out << row.line << '\n';
}

inline int cmd_sweep(const RunConfig& run) {
    const auto axis = axis_from_tag(run.axis);
    if (!axis) {
        throw ConfigError(run.axis.empty()
                              ? "--axis is required for sweep"
                              : "unknown sweep axis '" + run.axis + "'");
    }
    const std::vector<double> values = parse_values(run.values);
    const std::vector<Strategy> strategies = parse_strategies(run.strategies);
    const auto sweep = run_sweep(run.params, *axis, values, strategies);
    if (run.out_path.empty()) {
        write_sweep_csv(std::cout, sweep);
    } else {
        std::ofstream out = open_output(run.out_path);
        write_sweep_csv(out, sweep);
        std::cout << "wrote " << sweep.size() * strategies.size()
                  << " sweep rows to " << run.out_path << '\n';
    }
    return kExitOk;
}

inline int cmd_compare(const RunConfig& run) {
    validate(run.params);
    const std::vector<Strategy> strategies = parse_strategies(run.strategies);
    const auto results = detail::run_trials(run.params, strategies);
    const auto means = detail::mean_metrics(results, strategies);

    auto write = [&](std::ostream& out) {
        out << "# fsomcast compare schema v1\n"
            << "strategy,trials,mean_delay_s,mean_avg_throughput_bps,"
               "mean_solver_time_s\n";
        std::vector<const StrategyMetrics*> sorted;
        for (const StrategyMetrics& m : means) sorted.push_back(&m);
        std::sort(sorted.begin(), sorted.end(),
                  [](const StrategyMetrics* a, const StrategyMetrics* b) {
                      return strategy_tag(a->strategy) < strategy_tag(b->strategy);
                  });
        for (const StrategyMetrics* m : sorted) {
            out << strategy_tag(m->strategy) << ',' << run.params.trials << ','
                << fmt9(m->total_delay) << ',' << fmt9(m->average_throughput)
                << ',' << fmt9(m->solver_wall_time) << '\n';
        }
    };
    if (run.out_path.empty()) {
        write(std::cout);
    } else {
        std::ofstream out = open_output(run.out_path);
        write(out);
    }
    std::cout << "compared " << strategies.size() << " strategies over "
              << run.params.trials << " trials (N=" << run.params.node_count
              << ")\n";
    return kExitOk;
}

// Exhaustive search, interval DP, and branch and bound must agree on every
// seeded instance. Node counts cycle over {2..cap}. corrupt_cost != 1
// perturbs the DP objective to prove the harness can fail.
inline int cmd_oracle_check(const RunConfig& run) {
    validate(run.params);
    if (run.bruteforce_cap < 1 || run.bruteforce_cap > 12) {
        throw ConfigError("bruteforce_cap must lie in [1, 12]");
    }
    constexpr double kTol = 1e-9;
    double worst_gap = 0.0;
    for (int t = 0; t < run.params.trials; ++t) {
        SimParams point = run.params;
        point.node_count = run.bruteforce_cap == 1
                               ? 1
                               : 2 + t % (run.bruteforce_cap - 1);
        const Scenario scenario = generate_scenario(point, static_cast<std::uint64_t>(t));
        const SolverConfig config = solver_config(point);
        const double exhaustive = exhaustive_min_cover_delay(
            scenario, config, static_cast<std::size_t>(run.bruteforce_cap));
        const double dp = solve_exact_dp(scenario, config).total_delay * run.corrupt_cost;
        const double bnb = solve_exact_bnb(scenario, config).total_delay;
        const double scale = std::max({exhaustive, dp, bnb});
        const double gap =
            std::max({std::abs(exhaustive - dp), std::abs(exhaustive - bnb),
                      std::abs(dp - bnb)}) / scale;
        worst_gap = std::max(worst_gap, gap);
        if (gap > kTol) {
            std::cout << "oracle-check FAILED at trial " << t << " (N="
                      << point.node_count << ", seed "
                      << trial_seed(point.master_seed, static_cast<std::uint64_t>(t))
                      << "): exhaustive=" << fmt9(exhaustive) << " dp=" << fmt9(dp)
                      << " bnb=" << fmt9(bnb) << '\n';
            return kExitFailure;
        }
    }
    std::cout << "oracle-check OK: " << run.params.trials
              << " trials, max relative gap " << fmt9(worst_gap) << '\n';
    return kExitOk;
}

} // namespace cli_detail

inline int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Minimum-delay multicast planning for FSO transmitters with "
                 "adjustable beam divergence"};
    RunConfig run;
    app.add_option("--command", run.command,
                   "one of: solve, sweep, compare, oracle-check")
        ->required();
    app.add_option("--config", run.config_path, "flat key-value config file");
    app.add_option("--seed", run.seed, "master seed override");
    app.add_option("--trials", run.trials, "trial count override");
    app.add_option("--axis", run.axis,
                   "sweep axis: data_size, gps_error, alignment_delay, node_count");
    app.add_option("--values", run.values, "comma-separated sweep axis values");
    app.add_option("--strategies", run.strategies,
                   "comma-separated strategy tags (default: all)");
    app.add_option("--out", run.out_path, "output CSV path (default: stdout)");

    try {
        app.parse(argc, argv);
        cli_detail::load_config_file(run);
        if (run.seed) run.params.master_seed = *run.seed;
        if (run.trials) run.params.trials = *run.trials;

        if (run.command == "solve") return cli_detail::cmd_solve(run);
        if (run.command == "sweep") return cli_detail::cmd_sweep(run);
        if (run.command == "compare") return cli_detail::cmd_compare(run);
        if (run.command == "oracle-check") return cli_detail::cmd_oracle_check(run);
        throw ConfigError("unknown command '" + run.command + "'");
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const InfeasibleScenarioError& e) {
        std::cerr << "infeasible scenario: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const InfeasibleSetError& e) {
        std::cerr << "infeasible scenario: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

inline int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("fsomcast");
    for (const std::string& arg : args) argv.push_back(arg.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

} // namespace fsomcast
