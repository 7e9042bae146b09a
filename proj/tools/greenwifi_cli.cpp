// greenwifi CLI: scenario generation, static solves, dynamic runs and full
// benchmark sweeps.
//
// Exit codes: 0 success, 1 configuration/usage error, 2 internal invariant
// violation (a bug, not bad input).

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "greenwifi/experiment.hpp"
#include "greenwifi/rng.hpp"

namespace {

using namespace greenwifi;

struct CommonArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> aps;
    std::optional<double> alpha;
    std::optional<long> slots;
    std::string out_dir;
};

ExperimentConfig make_config(const CommonArgs& args) {
    ExperimentConfig cfg;
    if (!args.config_path.empty()) cfg = load_experiment_config(args.config_path);
    if (args.alpha) cfg.alpha = *args.alpha;
    if (args.slots) {
        cfg.total_slots = *args.slots;
        cfg.dcf.sim_slots = *args.slots;
    }
    if (args.aps) cfg.ap_counts = {*args.aps};
    if (args.seed) cfg.seeds = {*args.seed};
    if (!args.out_dir.empty()) cfg.output_dir = args.out_dir;
    cfg.validate();
    return cfg;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "Experiment TOML config file");
    cmd->add_option("--seed", args.seed, "Client placement seed (overrides config seeds)");
    cmd->add_option("--aps", args.aps, "AP count (overrides config ap_counts)");
    cmd->add_option("--alpha", args.alpha, "Fairness parameter alpha");
    cmd->add_option("--slots", args.slots, "Number of scheduling slots");
    cmd->add_option("--out", args.out_dir, "Output directory");
}

Deployment deployment_for(const ExperimentConfig& cfg, const std::string& deployment_path,
                          int ap_count, std::uint64_t seed) {
    if (!deployment_path.empty()) return load_deployment(deployment_path);
    return make_deployment(ap_count, cfg.scenario, seed);
}

int cmd_gen(const CommonArgs& args, const std::string& out_file) {
    const ExperimentConfig cfg = make_config(args);
    const Deployment d =
        make_deployment(cfg.ap_counts.front(), cfg.scenario, cfg.seeds.front());
    if (out_file.empty() || out_file == "-") {
        std::cout << deployment_to_toml(d);
    } else {
        save_deployment(d, out_file);
        std::fprintf(stderr, "wrote %s (%d APs, %d clients)\n", out_file.c_str(),
                     static_cast<int>(d.ap_positions.size()),
                     static_cast<int>(d.client_positions.size()));
    }
    return 0;
}

int cmd_solve(const CommonArgs& args, const std::string& deployment_path) {
    const ExperimentConfig cfg = make_config(args);
    const Deployment d =
        deployment_for(cfg, deployment_path, cfg.ap_counts.front(), cfg.seeds.front());
    const SimContext sim = make_sim_context(cfg, d);
    const PowerContext ctx = sim.power_context(PowerPolicy::minimal);
    const Solution sol =
        solve(ctx, static_ee_objective(cfg.alpha, cfg.radio.circuit_power_mw, sim.n_links()),
              cfg.solver);

    std::printf("status: %s\n", sol.status == SolveStatus::optimal ? "optimal" : "iteration-capped");
    std::printf("objective (log U_hat): %g\n", sol.objective);
    std::printf("bound gap: %g, iterations: %ld\n", sol.bound_gap, sol.iterations);
    std::printf("link  rate_mbps  power_mw\n");
    for (std::size_t i = 0; i < sol.rates.size(); ++i)
        std::printf("%4zu  %9.1f  %8.4f\n", i, sol.rates[i], sol.powers[i]);
    const double u_hat = objective_u_hat(sol.rates, sol.powers, cfg.alpha, cfg.radio.circuit_power_mw);
    std::printf("U_hat: %g Mbit/s per mW\n", u_hat);
    return 0;
}

int cmd_run(const CommonArgs& args, const std::string& solution_name,
            const std::string& deployment_path) {
    const ExperimentConfig cfg = make_config(args);
    const SolutionKind kind = solution_from_string(solution_name);
    const int ap_count = cfg.ap_counts.front();
    const std::uint64_t seed = cfg.seeds.front();

    TimeSeries ts;
    if (!deployment_path.empty()) {
        const Deployment d = load_deployment(deployment_path);
        const SimContext sim = make_sim_context(cfg, d);
        switch (kind) {
            case SolutionKind::legacy: {
                DcfConfig dcf = cfg.dcf;
                dcf.sense_threshold_dbm = cfg.radio.sense_threshold_dbm;
                dcf.tx_power_mw = cfg.radio.max_power_mw;
                dcf.sim_slots = cfg.total_slots;
                dcf.rng_seed = mix_seed(seed, 0xDCFDCFULL);
                ts = run_legacy(d, cfg.radio, cfg.mcs, dcf, cfg.slot_duration, true);
                break;
            }
            case SolutionKind::sched:
                ts = run_scheduling_only(sim, cfg.total_slots, cfg.solver, cfg.slot_duration, true);
                break;
            case SolutionKind::powersched:
                ts = run_power_scheduling(sim, cfg.total_slots, cfg.solver, cfg.slot_duration, true);
                break;
            case SolutionKind::ee:
                ts = run_dynamic(sim, SchedulerPolicy::ee(cfg.alpha), cfg.total_slots, cfg.solver,
                                 cfg.slot_duration, true);
                break;
        }
    } else {
        ts = run_single(cfg, kind, ap_count, seed, true);
    }

    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    const fs::path csv_path = fs::path(cfg.output_dir) /
                              (std::string("run_") + to_string(kind) + ".csv");
    std::ofstream out(csv_path, std::ios::binary);
    write_timeseries_csv(ts, out);

    const MetricsRow row =
        compute_metrics(ts, cfg.alpha, cfg.radio.circuit_power_mw, to_string(kind), ap_count, seed);
    std::printf("wrote %s\n", csv_path.string().c_str());
    std::printf("mean %.3f Mbit/s, geomean %.3f Mbit/s, energy %.1f mWs (floor %.1f), U_hat %.6f\n",
                row.mean_mbps, row.geomean_mbps, row.energy_mws, row.floor_mws, row.u_hat);
    return 0;
}

int cmd_sweep(const CommonArgs& args, const std::string& solution_filter, int jobs) {
    ExperimentConfig cfg = make_config(args);
    if (!solution_filter.empty()) cfg.solutions = {solution_from_string(solution_filter)};
    const auto rows = run_sweep_to_dir(cfg, cfg.output_dir, jobs);
    std::printf("wrote %zu metric rows and figure data to %s\n", rows.size(),
                cfg.output_dir.c_str());
    return 0;
}

int cmd_oracle(const CommonArgs& args, std::uint64_t seed0, int count) {
    // Randomized cross-check of the solver against exhaustive enumeration on
    // small geometric instances: 1-3 links dropped into the area, a shortened
    // rate ladder, and a randomized sense threshold to hit both the
    // coexistence-rich and coexistence-blocked regimes.
    const ExperimentConfig base = make_config(args);
    const double alphas[] = {0.0, 0.5, 1.0, 2.0};
    int mismatches = 0;
    for (int t = 0; t < count; ++t) {
        const std::uint64_t seed = seed0 + static_cast<std::uint64_t>(t);
        std::mt19937_64 rng(mix_seed(seed, 0x0eac1eULL));

        Deployment d;
        d.area_size = base.scenario.area_m;
        const int n_links = 1 + static_cast<int>(uniform_below(rng, 3));
        const int n_aps = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n_links)));
        d.ap_positions = place_clients(n_aps, d.area_size, mix_seed(seed, 1), base.scenario.ap_height_m);
        d.client_positions =
            place_clients(n_links, d.area_size, mix_seed(seed, 2), base.scenario.client_height_m);
        d.links = associate(d.ap_positions, d.client_positions);

        RadioConfig radio = base.radio;
        radio.sense_threshold_dbm = uniform_in(rng, -100.0, -70.0);

        std::vector<McsStep> steps(base.mcs.steps().begin(),
                                   base.mcs.steps().begin() + 1 + static_cast<long>(uniform_below(rng, 3)));
        const McsTable table(std::move(steps));

        const GainMatrices gains = build_gains(d, radio);
        const PowerContext ctx{&gains, &table, &radio, topology_of(d), PowerPolicy::minimal};
        const MonotoneObjective obj =
            static_ee_objective(alphas[seed % 4], radio.circuit_power_mw, n_links);

        const Solution fast = solve(ctx, obj);
        const Solution exact = brute_force(ctx, obj);
        const bool both_neg_inf = std::isinf(fast.objective) && std::isinf(exact.objective) &&
                                  fast.objective < 0 && exact.objective < 0;
        const bool match = both_neg_inf ||
                           std::abs(fast.objective - exact.objective) <=
                               1e-6 * std::max(1e-30, std::abs(exact.objective));
        if (!match) {
            ++mismatches;
            std::printf("MISMATCH seed %llu: solve %.12g vs brute %.12g\n",
                        static_cast<unsigned long long>(seed), fast.objective, exact.objective);
        }
    }
    std::printf("%d/%d instances matched\n", count - mismatches, count);
    return mismatches == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy-efficient fair power control and scheduling for dense Wi-Fi"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string deployment_path;
    std::string out_file;
    std::string solution_name = "ee";
    std::string solution_filter;
    int jobs = 0;
    std::uint64_t oracle_seed = 1;
    int oracle_count = 200;

    CLI::App* gen = app.add_subcommand("gen", "Generate a deployment TOML file");
    add_common(gen, args);
    gen->add_option("--deployment-out,-o", out_file, "Output file ('-' for stdout)");

    CLI::App* solve_cmd = app.add_subcommand("solve", "Static optimum for one deployment");
    add_common(solve_cmd, args);
    solve_cmd->add_option("--deployment", deployment_path, "Deployment TOML (generated if absent)");

    CLI::App* run = app.add_subcommand("run", "Dynamic run of one solution, writes a slot CSV");
    add_common(run, args);
    run->add_option("--solution", solution_name, "legacy|sched|powersched|ee")->required();
    run->add_option("--deployment", deployment_path, "Deployment TOML (generated if absent)");

    CLI::App* sweep = app.add_subcommand("sweep", "Full benchmark grid, writes metrics and figures");
    add_common(sweep, args);
    sweep->add_option("--solution", solution_filter, "Restrict to one solution");
    sweep->add_option("--jobs", jobs, "Parallel grid jobs (0 = hardware)");

    CLI::App* oracle = app.add_subcommand("oracle", "Cross-check solver vs brute force");
    oracle->add_option("--config", args.config_path, "Experiment TOML config file");
    oracle->add_option("--seed", oracle_seed, "First instance seed");
    oracle->add_option("--count", oracle_count, "Number of instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (gen->parsed()) return cmd_gen(args, out_file);
        if (solve_cmd->parsed()) return cmd_solve(args, deployment_path);
        if (run->parsed()) return cmd_run(args, solution_name, deployment_path);
        if (sweep->parsed()) return cmd_sweep(args, solution_filter, jobs);
        if (oracle->parsed()) return cmd_oracle(args, oracle_seed, oracle_count);
    } catch (const std::logic_error& e) {
        std::fprintf(stderr, "internal invariant violation: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
