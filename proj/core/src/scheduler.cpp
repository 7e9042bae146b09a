#include "greenwifi/scheduler.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace greenwifi {

namespace {

void accrue(ScheduleState& state, const RateVector& rates, const PowerVector& powers,
            const RadioConfig& radio) {
    const double dt = state.slot_duration;
    const int n = static_cast<int>(state.R.size());
    double tx = 0.0;
    for (int i = 0; i < n; ++i) {
        state.R[static_cast<std::size_t>(i)] += rates[static_cast<std::size_t>(i)] * dt;
        tx += powers[static_cast<std::size_t>(i)];
    }
    state.energy_tx += tx * dt;
    state.energy_floor += static_cast<double>(n) * radio.circuit_power_mw * dt;
    state.slot_index += 1;
}

void record(std::vector<SlotRecord>* trace, const ScheduleState& state, const RateVector& rates,
            const PowerVector& powers) {
    if (!trace) return;
    SlotRecord rec;
    rec.slot = state.slot_index - 1;
    rec.rates = rates;
    rec.powers = powers;
    rec.cumulative_R = state.R;
    rec.cumulative_P = state.total_energy();
    trace->push_back(std::move(rec));
}

/// Highest ladder index link `i` can sustain alone under the policy's power
/// model, with the corresponding solo power; index 0 when even the lowest
/// step is out of reach.
std::pair<int, double> best_solo(const SimContext& sim, PowerPolicy policy, int i) {
    const PowerContext ctx = sim.power_context(policy);
    const int n = sim.n_links();
    RateVector rates(static_cast<std::size_t>(n), 0.0);
    for (int k = sim.table.size(); k >= 1; --k) {
        rates[static_cast<std::size_t>(i)] = sim.table.rate_at(k);
        const FeasibilityReport report = ctx.evaluate(rates);
        if (report.feasible) return {k, report.powers[static_cast<std::size_t>(i)]};
    }
    return {0, 0.0};
}

}  // namespace

void write_timeseries_csv(const TimeSeries& ts, std::ostream& out) {
    out << "slot,link,rate_mbps,power_mw,cumulative_R_mbit,cumulative_P_mws\n";
    char buf[160];
    for (const SlotRecord& rec : ts.trace) {
        for (int i = 0; i < ts.n_links; ++i) {
            std::snprintf(buf, sizeof buf, "%ld,%d,%.6f,%.9f,%.6f,%.6f\n", rec.slot, i,
                          rec.rates[static_cast<std::size_t>(i)],
                          rec.powers[static_cast<std::size_t>(i)],
                          rec.cumulative_R[static_cast<std::size_t>(i)], rec.cumulative_P);
            out << buf;
        }
    }
}

void warmup(ScheduleState& state, const SimContext& sim, const SchedulerPolicy& policy) {
    warmup(state, sim, policy, nullptr);
}

void warmup(ScheduleState& state, const SimContext& sim, const SchedulerPolicy& policy,
            std::vector<SlotRecord>* trace) {
    const int n = sim.n_links();
    if (state.slot_index != 0) throw std::logic_error("warmup: state is not fresh");
    state.R.assign(static_cast<std::size_t>(n), 0.0);

    for (int i = 0; i < n; ++i) {
        RateVector rates(static_cast<std::size_t>(n), 0.0);
        PowerVector powers(static_cast<std::size_t>(n), 0.0);
        const auto [index, power] = best_solo(sim, policy.power, i);
        if (index > 0) {
            rates[static_cast<std::size_t>(i)] = sim.table.rate_at(index);
            powers[static_cast<std::size_t>(i)] = power;
        }
        accrue(state, rates, powers, sim.radio);
        if (index == 0) state.R[static_cast<std::size_t>(i)] = kWarmupEpsilonMbit;
        record(trace, state, rates, powers);
    }
}

void WarmPool::remember(const std::vector<int>& indices) {
    for (std::size_t i = 0; i < pool_.size(); ++i) {
        if (pool_[i] == indices) {
            std::rotate(pool_.begin(), pool_.begin() + static_cast<std::ptrdiff_t>(i),
                        pool_.begin() + static_cast<std::ptrdiff_t>(i) + 1);
            return;
        }
    }
    pool_.insert(pool_.begin(), indices);
    if (pool_.size() > capacity_) pool_.resize(capacity_);
}

Solution step(ScheduleState& state, const SimContext& sim, const SchedulerPolicy& policy,
              const SolverConfig& solver_config, WarmPool& warm_pool,
              const ConflictGraph* conflicts) {
    const int n = sim.n_links();
    for (double R : state.R)
        if (!(R > 0.0)) throw std::logic_error("step: warm-up incomplete (some R_i is zero)");
    if (!(state.total_energy() > 0.0)) throw std::logic_error("step: warm-up incomplete (P is zero)");

    const DerivativeWeights weights = derivative_weights(state.R, state.total_energy(), policy.alpha);

    MonotoneObjective objective;
    objective.v = [&weights](const RateVector& rates) {
        double s = 0.0;
        for (std::size_t i = 0; i < rates.size(); ++i) s += weights.c[i] * rates[i];
        return s;
    };
    objective.linear_v = weights.c;
    if (policy.energy_in_score) {
        const double coeff = weights.power_coeff;
        const double pc = sim.radio.circuit_power_mw;
        objective.w_cost = [coeff, pc, n](const PowerVector& powers) {
            double total = static_cast<double>(n) * pc;
            for (double p : powers) total += p;
            return coeff * total;
        };
    } else {
        objective.w_cost = [](const PowerVector&) { return 0.0; };
    }

    PowerContext ctx = sim.power_context(policy.power);
    ConflictGraph local_graph;
    if (conflicts) {
        ctx.conflicts = conflicts;
    } else {
        local_graph = build_conflict_graph(sim.gains, sim.table, sim.radio, sim.topology, policy.power);
        ctx.conflicts = &local_graph;
    }
    Solution chosen = solve(ctx, objective, solver_config, warm_pool.candidates());
    warm_pool.remember(chosen.rate_indices);

    accrue(state, chosen.rates, chosen.powers, sim.radio);
    return chosen;
}

TimeSeries run_dynamic(const SimContext& sim, const SchedulerPolicy& policy, long total_slots,
                       const SolverConfig& solver_config, double slot_duration,
                       bool record_trace) {
    const int n = sim.n_links();
    if (total_slots < n) throw std::invalid_argument("run_dynamic: total_slots must be >= n_links");

    ScheduleState state;
    state.slot_duration = slot_duration;

    TimeSeries ts;
    ts.n_links = n;
    ts.slot_duration = slot_duration;
    ts.total_slots = total_slots;
    std::vector<SlotRecord>* trace = record_trace ? &ts.trace : nullptr;

    warmup(state, sim, policy, trace);

    const ConflictGraph conflicts =
        build_conflict_graph(sim.gains, sim.table, sim.radio, sim.topology, policy.power);
    WarmPool warm_pool;
    for (long slot = n; slot < total_slots; ++slot) {
        const Solution chosen = step(state, sim, policy, solver_config, warm_pool, &conflicts);
        record(trace, state, chosen.rates, chosen.powers);
    }

    ts.final_R = state.R;
    ts.energy_floor = state.energy_floor;
    ts.energy_tx = state.energy_tx;
    return ts;
}

}  // namespace greenwifi
