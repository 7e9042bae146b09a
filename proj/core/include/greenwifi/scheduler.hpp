#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "greenwifi/fairness.hpp"
#include "greenwifi/solver.hpp"

namespace greenwifi {

/// Everything a run needs about the environment, bundled once.
struct SimContext {
    GainMatrices gains;
    McsTable table;
    RadioConfig radio;
    LinkTopology topology;

    int n_links() const { return topology.n_links(); }
    PowerContext power_context(PowerPolicy policy) const {
        return PowerContext{&gains, &table, &radio, topology, policy};
    }
};

/// Cumulative per-link data and network energy driving the dynamic weights.
/// Energy is accounted as a closed-form circuit floor plus accumulated
/// transmit energy, so total >= floor holds exactly.
struct ScheduleState {
    std::vector<double> R;       // cumulative delivered data, Mbit
    double energy_floor = 0.0;   // N * p_c * dt * slots, mWs
    double energy_tx = 0.0;      // transmit part, mWs
    double slot_duration = 0.1;  // seconds
    long slot_index = 0;

    double total_energy() const { return energy_floor + energy_tx; }
};

/// What the per-slot optimizer is allowed to do and what it scores.
///   ee:               minimal powers, score includes the energy term
///   scheduling_only:  powers fixed at p_hat, rate-only score
///   power_scheduling: minimal powers, rate-only score
struct SchedulerPolicy {
    PowerPolicy power = PowerPolicy::minimal;
    bool energy_in_score = true;
    double alpha = 1.0;

    static SchedulerPolicy ee(double alpha) { return {PowerPolicy::minimal, true, alpha}; }
    static SchedulerPolicy scheduling_only() { return {PowerPolicy::fixed_max, false, 1.0}; }
    static SchedulerPolicy power_scheduling() { return {PowerPolicy::minimal, false, 1.0}; }
};

/// One scheduled slot: chosen rates and powers per link.
struct SlotRecord {
    long slot = 0;
    RateVector rates;
    PowerVector powers;
    std::vector<double> cumulative_R;
    double cumulative_P = 0.0;
};

struct TimeSeries {
    int n_links = 0;
    double slot_duration = 0.1;
    long total_slots = 0;
    std::vector<double> final_R;  // Mbit per link
    double energy_floor = 0.0;    // mWs
    double energy_tx = 0.0;       // mWs
    std::vector<SlotRecord> trace;  // per-slot records; empty unless recorded

    double total_energy() const { return energy_floor + energy_tx; }
    double duration_s() const { return slot_duration * static_cast<double>(total_slots); }
};

/// CSV with header slot,link,rate_mbps,power_mw,cumulative_R_mbit,cumulative_P_mws.
void write_timeseries_csv(const TimeSeries& ts, std::ostream& out);

/// Data seeded into links that cannot transmit even alone, so the
/// derivative weights stay defined.
inline constexpr double kWarmupEpsilonMbit = 1e-6;

/// Round-robin warm-up: each link once, alone, at the highest rate it can
/// individually sustain under the policy's power model. Links infeasible
/// even alone get kWarmupEpsilonMbit instead. Consumes exactly n_links
/// slots; afterwards every R_i > 0 and the energy floor is positive.
void warmup(ScheduleState& state, const SimContext& sim, const SchedulerPolicy& policy);
void warmup(ScheduleState& state, const SimContext& sim, const SchedulerPolicy& policy,
            std::vector<SlotRecord>* trace);

/// Recently chosen configurations, most recent first. Scheduling patterns
/// cycle, so seeding every slot's solve with this pool gives the solver a
/// near-optimal incumbent before it opens a single box.
class WarmPool {
  public:
    explicit WarmPool(std::size_t capacity = 32) : capacity_(capacity) {}
    void remember(const std::vector<int>& indices);
    std::span<const std::vector<int>> candidates() const { return pool_; }

  private:
    std::size_t capacity_;
    std::vector<std::vector<int>> pool_;
};

/// One dynamic slot: picks the schedulable configuration maximizing the
/// derivative slot score via the branch-and-bound solver, then advances the
/// cumulative state. Requires completed warm-up (throws std::logic_error
/// otherwise). `conflicts` may carry a precomputed conflict graph for the
/// policy's power model; it is rebuilt per call when null.
Solution step(ScheduleState& state, const SimContext& sim, const SchedulerPolicy& policy,
              const SolverConfig& solver_config, WarmPool& warm_pool,
              const ConflictGraph* conflicts = nullptr);

/// Full dynamic run of `total_slots` slots (warm-up included; requires
/// total_slots >= n_links). Deterministic.
TimeSeries run_dynamic(const SimContext& sim, const SchedulerPolicy& policy, long total_slots,
                       const SolverConfig& solver_config, double slot_duration,
                       bool record_trace = false);

}  // namespace greenwifi
