#pragma once

#include <cstdint>

#include "greenwifi/scheduler.hpp"

namespace greenwifi {

/// Slotted CSMA/CA abstraction. Single-stage contention window (no
/// exponential backoff), no RTS/CTS; packets occupy packet_slots slots and
/// per-slot delivery follows the SINR of whatever overlaps. Deterministic
/// for a fixed seed.
struct DcfConfig {
    int contention_window = 16;   // backoff drawn uniformly from [0, CW)
    int packet_slots = 32;        // transmission duration in slots
    double sense_threshold_dbm = -96.0;
    double tx_power_mw = 40.0;    // fixed at p_hat
    long sim_slots = 10000;
    std::uint64_t rng_seed = 1;
};

/// Legacy Wi-Fi baseline: APs contend per DCF, transmit at fixed full power,
/// and serve their clients round-robin. An AP defers while it senses another
/// ongoing transmission above the threshold. Each link transmits at the MCS
/// its clean-channel SINR supports (what rate adaptation converges to); a
/// slot whose live SINR falls below that MCS's requirement delivers nothing,
/// which is how same-slot starts and hidden terminals turn into collisions.
TimeSeries run_legacy(const Deployment& deployment, const RadioConfig& radio,
                      const McsTable& table, const DcfConfig& dcf, double slot_duration = 0.1,
                      bool record_trace = false);

/// Scheduling-only baseline: dynamic scheduler, powers fixed at p_hat for
/// active links, rate-only slot score (geometric-mean fairness weights).
TimeSeries run_scheduling_only(const SimContext& sim, long total_slots,
                               const SolverConfig& solver_config, double slot_duration,
                               bool record_trace = false);

/// Power control + scheduling baseline: dynamic scheduler over the full
/// rate ladder with minimal powers; power affects feasibility only, not the
/// slot score.
TimeSeries run_power_scheduling(const SimContext& sim, long total_slots,
                                const SolverConfig& solver_config, double slot_duration,
                                bool record_trace = false);

}  // namespace greenwifi
