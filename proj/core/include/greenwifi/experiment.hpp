#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "greenwifi/baselines.hpp"
#include "greenwifi/scenario.hpp"
#include "greenwifi/scheduler.hpp"

namespace greenwifi {

enum class SolutionKind { legacy, sched, powersched, ee };

const char* to_string(SolutionKind kind);
SolutionKind solution_from_string(const std::string& name);  // throws on unknown names

/// The whole experiment grid: solutions x ap_counts x seeds.
struct ExperimentConfig {
    RadioConfig radio;
    ScenarioConfig scenario;
    // Per-slot solves get a bounded search budget: warm starts leave the
    // solver within a whisker of optimal, and a capped best-first pass is
    // what keeps full sweeps tractable.
    SolverConfig solver{.epsilon = 1e-3, .max_iterations = 2000};
    DcfConfig dcf;
    McsTable mcs = default_mcs_table();
    double alpha = 1.0;
    std::vector<int> ap_counts = {1, 5, 10, 20, 30};
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::vector<SolutionKind> solutions = {SolutionKind::legacy, SolutionKind::sched,
                                           SolutionKind::powersched, SolutionKind::ee};
    long total_slots = 10000;
    double slot_duration = 0.1;
    std::string output_dir = "out";

    void validate() const;
};

ExperimentConfig load_experiment_config(const std::string& path);
std::string experiment_config_to_toml(const ExperimentConfig& cfg);

/// One grid point's aggregate result.
struct MetricsRow {
    std::string solution;
    int ap_count = 0;
    std::uint64_t seed = 0;
    double mean_mbps = 0.0;
    double geomean_mbps = 0.0;
    double energy_mws = 0.0;
    double floor_mws = 0.0;
    double u_hat = 0.0;  // Mbit/s per mW, on time-averaged rates and power

    /// Throws std::logic_error when an accounting invariant breaks
    /// (energy below the circuit floor, geomean above the mean).
    void validate() const;
};

MetricsRow compute_metrics(const TimeSeries& ts, double alpha, double circuit_power_mw,
                           const std::string& solution, int ap_count, std::uint64_t seed);

/// Runs one grid point. The deployment is derived from the scenario config:
/// AP layout from the fixed placement seed, clients from `seed`.
TimeSeries run_single(const ExperimentConfig& cfg, SolutionKind kind, int ap_count,
                      std::uint64_t seed, bool record_trace = false);

/// Runs the full grid, `jobs` points in parallel (0 = hardware parallelism),
/// and returns rows in canonical order (solutions, ap_counts, seeds as
/// listed in the config) independent of scheduling. No files are written.
std::vector<MetricsRow> run_sweep(const ExperimentConfig& cfg, int jobs = 0);

/// metrics.csv with the fixed header
/// solution,ap_count,seed,mean_mbps,geomean_mbps,energy_mws,floor_mws,u_hat.
std::string metrics_csv(const std::vector<MetricsRow>& rows);

/// Writes metrics.csv plus per-figure plot data (seed-averaged curves per
/// solution: fig3_throughput.csv, fig4_energy.csv, fig5_efficiency.csv) and
/// simple SVG line charts for each figure. Returns the metrics rows.
std::vector<MetricsRow> run_sweep_to_dir(const ExperimentConfig& cfg, const std::string& out_dir,
                                         int jobs = 0);

SimContext make_sim_context(const ExperimentConfig& cfg, const Deployment& deployment);

}  // namespace greenwifi
