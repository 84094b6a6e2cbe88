// Acceptance suite: every release criterion runs at its stated tolerance and
// prints one PASS/FAIL line. The process exits nonzero if any criterion
// fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fsomcast/cli.hpp"
#include "fsomcast/fsomcast.hpp"

using namespace fsomcast;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass,
            const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", index,
                name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// --- criterion 1: exhaustive search, interval DP, and branch and bound agree

void criterion_oracle_equivalence() {
    const auto start = std::chrono::steady_clock::now();
    constexpr double kTol = 1e-9;
    double worst = 0.0;
    int violations = 0;
    for (int t = 0; t < 200; ++t) {
        SimParams params; // defaults
        params.node_count = 2 + t % 7; // N in {2..8}
        const Scenario scenario = generate_scenario(params, static_cast<std::uint64_t>(t));
        const SolverConfig config = solver_config(params);
        const double exhaustive = exhaustive_min_cover_delay(scenario, config);
        const double dp = solve_exact_dp(scenario, config).total_delay;
        const double bnb = solve_exact_bnb(scenario, config).total_delay;
        const double scale = std::max({exhaustive, dp, bnb});
        const double gap = std::max({std::abs(exhaustive - dp),
                                     std::abs(exhaustive - bnb),
                                     std::abs(dp - bnb)}) / scale;
        worst = std::max(worst, gap);
        if (gap > kTol) ++violations;
    }
    const double elapsed = seconds_since(start);
    report(1, "oracle equivalence over 200 scenarios, N in {2..8}",
           violations == 0 && elapsed < 60.0,
           "max rel gap " + fmt(worst) + ", " + fmt(elapsed) + " s");
}

// --- criteria 2 and 3: per-trial dominance and the mean delay ordering

void criteria_dominance_and_ordering() {
    SimParams params; // defaults: N=15, P=100 GB, r=3 m, d_al=2 s
    const SolverConfig config = solver_config(params);
    constexpr int kTrials = 1000;

    int violations = 0;
    double sum_exact = 0.0, sum_greedy = 0.0, sum_mu = 0.0, sum_bcast = 0.0;
    for (int t = 0; t < kTrials; ++t) {
        const Scenario scenario =
            generate_scenario(params, static_cast<std::uint64_t>(t));
        const double exact = solve_exact_dp(scenario, config).total_delay;
        const MulticastPlan greedy = solve_greedy(scenario, config);
        const double mu = solve_multiple_unicast(scenario, config).total_delay;
        const double bcast = solve_naive_broadcast(scenario, config).total_delay;

        double recomputed = 0.0;
        for (const ContiguousSet& s : greedy.sets) {
            recomputed += set_delay(scenario, s.first, s.last, config);
        }
        const bool ok = exact <= greedy.total_delay * (1 + 1e-12) &&
                        exact <= mu * (1 + 1e-12) &&
                        exact <= bcast * (1 + 1e-12) &&
                        std::abs(greedy.total_delay - recomputed) <=
                            1e-9 * recomputed;
        if (!ok) ++violations;
        sum_exact += exact;
        sum_greedy += greedy.total_delay;
        sum_mu += mu;
        sum_bcast += bcast;
    }
    report(2, "exact dominates greedy/MU/BCast on every trial", violations == 0,
           std::to_string(violations) + " violations in " +
               std::to_string(kTrials) + " trials");

    const double me = sum_exact / kTrials;
    const double mg = sum_greedy / kTrials;
    const double mm = sum_mu / kTrials;
    const double mb = sum_bcast / kTrials;
    const bool ordered = me <= mg && mg <= mm && mm <= mb;
    const bool bcast_far = mb >= 5.0 * me;
    report(3, "mean delay ordering exact <= greedy <= MU <= BCast, BCast >= 5x exact",
           ordered && bcast_far,
           "means " + fmt(me) + " / " + fmt(mg) + " / " + fmt(mm) + " / " +
               fmt(mb) + " s, BCast/exact " + fmt(mb / me));
}

// --- criterion 4: monotone mean trends along every parameter axis

int count_inversions(const std::vector<double>& means, bool nondecreasing) {
    int inversions = 0;
    for (std::size_t k = 0; k + 1 < means.size(); ++k) {
        if (nondecreasing ? means[k + 1] < means[k] : means[k + 1] > means[k]) {
            ++inversions;
        }
    }
    return inversions;
}

void criterion_trends() {
    SimParams base;
    base.trials = 500;
    const std::vector<Strategy> strategies(kAllStrategies.begin(),
                                           kAllStrategies.end());
    struct Axis {
        SweepAxis axis;
        std::vector<double> values;
        bool throughput_nondecreasing;
    };
    const std::vector<Axis> axes{
        {SweepAxis::DataSize, {1.6e11, 4.8e11, 8e11, 1.12e12, 1.44e12}, true},
        {SweepAxis::GpsError, {1.0, 2.0, 3.0, 4.0, 5.0}, false},
        {SweepAxis::AlignmentDelay, {1.0, 2.0, 3.0}, false},
        {SweepAxis::NodeCount, {10.0, 15.0, 20.0, 25.0}, false},
    };
    bool pass = true;
    std::string detail;
    for (const Axis& axis : axes) {
        const auto sweep = run_sweep(base, axis.axis, axis.values, strategies);
        for (std::size_t s = 0; s < strategies.size(); ++s) {
            std::vector<double> delay, throughput;
            for (const SweepResult& point : sweep) {
                delay.push_back(point.means[s].total_delay);
                throughput.push_back(point.means[s].average_throughput);
            }
            const int delay_inv = count_inversions(delay, true);
            const int thr_inv =
                count_inversions(throughput, axis.throughput_nondecreasing);
            if (delay_inv > 1 || thr_inv > 1) {
                pass = false;
                detail += std::string(axis_tag(axis.axis)) + "/" +
                          std::string(strategy_tag(strategies[s])) + " inversions " +
                          std::to_string(delay_inv) + "+" + std::to_string(thr_inv) +
                          "; ";
            }
        }
    }
    if (detail.empty()) detail = "all 4 axes x 5 strategies monotone within tolerance";
    report(4, "delay/throughput trends across P, r, d_al, N sweeps", pass, detail);
}

// --- criteria 5 and 6: heuristic efficiency and complexity signatures

void criteria_efficiency_and_complexity() {
    SimParams params;
    params.node_count = 25;
    constexpr int kTrials = 200;

    double greedy_time = 0.0, bnb_time_25 = 0.0;
    double greedy_thr = 0.0, exact_thr = 0.0;
    const std::vector<Strategy> pair{Strategy::ExactBnb, Strategy::Greedy};
    for (int t = 0; t < kTrials; ++t) {
        const TrialResult r =
            run_trial(params, static_cast<std::uint64_t>(t), pair);
        bnb_time_25 += r.metrics[0].solver_wall_time;
        exact_thr += r.metrics[0].average_throughput;
        greedy_time += r.metrics[1].solver_wall_time;
        greedy_thr += r.metrics[1].average_throughput;
    }
    const double time_ratio = greedy_time / bnb_time_25;
    const double thr_ratio = greedy_thr / exact_thr;
    report(5, "greedy runs in <=10% of exact time with >=90% of its throughput",
           time_ratio <= 0.10 && thr_ratio >= 0.90,
           "time ratio " + fmt(time_ratio) + ", throughput ratio " + fmt(thr_ratio));

    // Greedy makes exactly N-1 pair comparisons.
    bool comparisons_ok = true;
    for (int n = 1; n <= 25 && comparisons_ok; ++n) {
        SimParams p;
        p.node_count = n;
        for (std::uint64_t t = 0; t < 3; ++t) {
            const Scenario scenario = generate_scenario(p, t);
            const GreedyTrace trace = solve_greedy_traced(scenario, solver_config(p));
            if (trace.comparisons != static_cast<std::size_t>(n - 1)) {
                comparisons_ok = false;
                break;
            }
        }
    }

    // The candidate collection has the closed-form size when theta_max never
    // binds.
    bool enumeration_ok = true;
    for (int n : {1, 4, 15, 25}) {
        SimParams p;
        p.node_count = n;
        SolverConfig wide = solver_config(p);
        wide.theta_max = std::numbers::pi;
        const Scenario scenario = generate_scenario(p, 1);
        const auto sets = enumerate_sets(scenario, wide);
        if (sets.size() != static_cast<std::size_t>(n) * (n + 1) / 2) {
            enumeration_ok = false;
        }
    }

    // Branch-and-bound time grows with N.
    SimParams small;
    small.node_count = 10;
    double bnb_time_10 = 0.0;
    const std::vector<Strategy> only_bnb{Strategy::ExactBnb};
    for (int t = 0; t < kTrials; ++t) {
        bnb_time_10 += run_trial(small, static_cast<std::uint64_t>(t), only_bnb)
                           .metrics[0]
                           .solver_wall_time;
    }
    const bool growth_ok = bnb_time_25 > bnb_time_10;
    report(6, "greedy comparisons N-1, K = N(N+1)/2 sets, BnB time grows with N",
           comparisons_ok && enumeration_ok && growth_ok,
           "bnb mean time N=10 " + fmt(bnb_time_10 / kTrials) + " s vs N=25 " +
               fmt(bnb_time_25 / kTrials) + " s");
}

// --- criterion 7: physics scaling laws and frozen scalar fixtures

void criterion_physics() {
    FsoLinkParams clean;
    clean.attenuation_db_per_km = 0.0;
    bool pass = true;
    std::string detail;

    const double base_rate = data_rate(clean, 0.01, 100.0);
    if (std::abs(data_rate(clean, 0.02, 100.0) - base_rate / 4.0) >
        1e-12 * base_rate) {
        pass = false;
        detail += "theta-square law; ";
    }
    if (std::abs(data_rate(clean, 0.01, 200.0) - base_rate / 4.0) >
        1e-12 * base_rate) {
        pass = false;
        detail += "distance-square law; ";
    }
    const double unity = received_power(clean, 1.2e-4, 100.0);
    if (std::abs(unity - clean.transmit_power_w) > 1e-12 * clean.transmit_power_w) {
        pass = false;
        detail += "geometry unity point; ";
    }
    if (std::abs(dbm_to_watts(13.0) - 0.019952623149688796) > 1e-6 * 0.0199526) {
        pass = false;
        detail += "dBm fixture; ";
    }
    if (std::abs(base_rate - 1.1956833614120914e14) > 1e-6 * 1.1956833614120914e14) {
        pass = false;
        detail += "data-rate fixture; ";
    }
    FsoLinkParams literal = clean;
    literal.transmit_power_w = 0.0199526;
    if (std::abs(received_power(literal, 0.01, 100.0) - 2.8731744e-6) >
        1e-6 * 2.8731744e-6) {
        pass = false;
        detail += "received-power fixture; ";
    }

    // Solver-side scalar fixtures: singleton and 15-degree pair.
    SolverConfig config;
    config.link = clean;
    std::vector<NodePosition> single{{0, 100.0 * std::cos(0.7), 100.0 * std::sin(0.7)}};
    const Scenario s1 = to_polar_sorted(single, 0.0);
    if (std::abs(set_delay(s1, 0, 0, config) - 2.0000669073456919) >
        1e-6 * 2.0000669073456919) {
        pass = false;
        detail += "singleton delay fixture; ";
    }
    std::vector<NodePosition> pair{
        {0, 50.0, 86.602540378443865},
        {1, 70.710678118654752, 70.710678118654752}};
    const Scenario s2 = to_polar_sorted(pair, 0.0);
    if (std::abs(set_delay(s2, 0, 1, config) - 6.5857571771219149) >
        1e-6 * 6.5857571771219149) {
        pass = false;
        detail += "pair delay fixture; ";
    }
    const double exact_total = solve_exact_dp(s2, config).total_delay;
    if (std::abs(exact_total - 4.0001338146913837) > 1e-6 * 4.0001338146913837) {
        pass = false;
        detail += "two-singleton optimum fixture; ";
    }
    if (detail.empty()) detail = "scaling laws at 1e-12, scalar fixtures at 1e-6";
    report(7, "link physics unit checks", pass, detail);
}

// --- criterion 8: byte-identical sweep CSV, serial and parallel

std::vector<std::string> masked_lines(const std::string& path) {
    std::ifstream in(path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#' &&
            line.find("axis_name") == std::string::npos) {
            lines.push_back(line.substr(0, line.rfind(',')));
        } else {
            lines.push_back(line);
        }
    }
    return lines;
}

void criterion_determinism() {
    const fs::path dir =
        fs::temp_directory_path() / ("fsomcast_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string serial_cfg = (dir / "serial.cfg").string();
    const std::string parallel_cfg = (dir / "parallel.cfg").string();
    {
        std::ofstream out(serial_cfg);
        out << "trials 40\nmaster_seed 2026\n";
    }
    {
        std::ofstream out(parallel_cfg);
        out << "trials 40\nmaster_seed 2026\nthreads 4\n";
    }
    auto run_into = [&](const std::string& cfg, const std::string& name) {
        const std::string out = (dir / name).string();
        const int rc = run_cli({"--command", "sweep", "--config", cfg, "--axis",
                                "gps_error", "--values", "1,3,5", "--strategies",
                                "exact-dp,greedy,multi-unicast,broadcast",
                                "--out", out});
        return std::make_pair(rc, out);
    };
    const auto [rc1, out1] = run_into(serial_cfg, "a.csv");
    const auto [rc2, out2] = run_into(serial_cfg, "b.csv");
    const auto [rc3, out3] = run_into(parallel_cfg, "c.csv");
    const bool ran = rc1 == 0 && rc2 == 0 && rc3 == 0;
    const auto a = masked_lines(out1);
    const auto b = masked_lines(out2);
    const auto c = masked_lines(out3);
    const bool identical = ran && a == b && a == c && a.size() > 2;
    fs::remove_all(dir);
    report(8, "sweep CSV byte-identical apart from solver-time column", identical,
           identical ? "two serial runs and one 4-thread run agree"
                     : "CSV outputs diverged");
}

} // namespace

int main() {
    std::printf("fsomcast acceptance suite\n");
    criterion_oracle_equivalence();
    criteria_dominance_and_ordering();
    criterion_trends();
    criteria_efficiency_and_complexity();
    criterion_physics();
    criterion_determinism();
    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
    } else {
        std::printf("%d acceptance criterion(s) failed\n", g_failures);
    }
    return g_failures == 0 ? 0 : 1;
}
