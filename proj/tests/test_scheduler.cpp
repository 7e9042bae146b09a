#include <cmath>

#include "doctest.h"
#include "greenwifi/scheduler.hpp"

using namespace greenwifi;

namespace {

SimContext make_sim(const Deployment& d, const RadioConfig& radio, const McsTable& table) {
    return SimContext{build_gains(d, radio), table, radio, topology_of(d)};
}

/// Two symmetric links whose APs sense each other at any useful power:
/// simultaneous activation is impossible, so the scheduler must alternate.
Deployment blocked_pair() {
    Deployment d;
    d.area_size = 100.0;
    d.ap_positions = {{45.0, 50.0, 3.0}, {55.0, 50.0, 3.0}};
    d.client_positions = {{45.0, 40.0, 1.0}, {55.0, 60.0, 1.0}};
    d.links = {{0, 0}, {1, 1}};
    return d;
}

Deployment solo_link() {
    Deployment d;
    d.area_size = 100.0;
    d.ap_positions = {{50.0, 50.0, 3.0}};
    d.client_positions = {{50.0, 45.0, 1.0}};
    d.links = {{0, 0}};
    return d;
}

}  // namespace

TEST_CASE("warmup: one solo slot per link, weights defined afterwards") {
    const RadioConfig radio;
    const SimContext sim = make_sim(blocked_pair(), radio, default_mcs_table());
    ScheduleState state;
    state.slot_duration = 0.1;
    warmup(state, sim, SchedulerPolicy::ee(1.0));

    CHECK(state.slot_index == 2);
    CHECK(state.R[0] > 0.0);
    CHECK(state.R[1] > 0.0);
    CHECK(state.R[0] == doctest::Approx(state.R[1]));  // symmetric instance
    CHECK(state.energy_floor == doctest::Approx(2.0 * radio.circuit_power_mw * 0.1 * 2.0));
    CHECK_NOTHROW(derivative_weights(state.R, state.total_energy(), 1.0));
}

TEST_CASE("warmup: a link that cannot transmit alone gets the epsilon seed") {
    Deployment d;
    d.area_size = 100.0;
    d.ap_positions = {{50.0, 50.0, 3.0}, {0.0, 0.0, 3.0}};
    d.client_positions = {{50.0, 45.0, 1.0}, {100.0, 100.0, 1.0}};  // 141 m: below MCS0 even at cap
    d.links = {{0, 0}, {1, 1}};
    const RadioConfig radio;
    const SimContext sim = make_sim(d, radio, default_mcs_table());

    ScheduleState state;
    state.slot_duration = 0.1;
    warmup(state, sim, SchedulerPolicy::ee(1.0));
    CHECK(state.R[0] > 1.0);
    CHECK(state.R[1] == kWarmupEpsilonMbit);
}

TEST_CASE("step: requires completed warm-up") {
    const RadioConfig radio;
    const SimContext sim = make_sim(solo_link(), radio, default_mcs_table());
    ScheduleState state;
    state.slot_duration = 0.1;
    state.R = {0.0};
    WarmPool warm;
    CHECK_THROWS_AS(step(state, sim, SchedulerPolicy::ee(1.0), {}, warm), std::logic_error);
}

TEST_CASE("run_dynamic: single link settles on the static optimum every slot") {
    const RadioConfig radio;
    const McsTable& table = default_mcs_table();
    const SimContext sim = make_sim(solo_link(), radio, table);

    const Solution static_opt =
        solve(sim.power_context(PowerPolicy::minimal),
              static_ee_objective(1.0, radio.circuit_power_mw, 1));
    REQUIRE(static_opt.rates[0] > 0.0);

    const TimeSeries ts = run_dynamic(sim, SchedulerPolicy::ee(1.0), 1000, {}, 0.1);
    const double avg_rate = ts.final_R[0] / ts.duration_s();
    CHECK(avg_rate == doctest::Approx(static_opt.rates[0]).epsilon(1e-9));
}

TEST_CASE("run_dynamic: blocked symmetric pair alternates to equal shares") {
    const RadioConfig radio;
    const McsTable& table = default_mcs_table();
    const SimContext sim = make_sim(blocked_pair(), radio, table);
    const PowerContext ctx = sim.power_context(PowerPolicy::minimal);

    // Coexistence must be blocked even at the lowest rate step.
    const double r0 = table.rate_at(1);
    CHECK_FALSE(ctx.evaluate({r0, r0}).feasible);

    // Solo ceiling: the largest individually sustainable rate.
    double solo = 0.0;
    for (int k = table.size(); k >= 1; --k) {
        if (ctx.evaluate({table.rate_at(k), 0.0}).feasible) {
            solo = table.rate_at(k);
            break;
        }
    }
    REQUIRE(solo > 0.0);

    const TimeSeries ts = run_dynamic(sim, SchedulerPolicy::ee(1.0), 2000, {}, 0.1);
    const double t0 = ts.final_R[0] / ts.duration_s();
    const double t1 = ts.final_R[1] / ts.duration_s();
    CHECK(t0 == doctest::Approx(solo / 2.0).epsilon(0.05));
    CHECK(t1 == doctest::Approx(solo / 2.0).epsilon(0.05));
    CHECK(std::abs(t0 - t1) / (t0 + t1) < 0.01);
}

TEST_CASE("run_dynamic: energy accounting is exact") {
    const RadioConfig radio;
    const SimContext sim = make_sim(blocked_pair(), radio, default_mcs_table());
    const long slots = 300;
    const TimeSeries ts = run_dynamic(sim, SchedulerPolicy::ee(1.0), slots, {}, 0.1, true);

    CHECK(ts.energy_floor == doctest::Approx(2.0 * radio.circuit_power_mw * 0.1 * slots));
    CHECK(ts.total_energy() >= ts.energy_floor);

    double tx_replay = 0.0;
    REQUIRE(ts.trace.size() == static_cast<std::size_t>(slots));
    for (const SlotRecord& rec : ts.trace)
        for (double p : rec.powers) tx_replay += p * 0.1;
    CHECK(ts.energy_tx == doctest::Approx(tx_replay).epsilon(1e-12));

    // Cumulative data replayed from the trace matches the final state.
    const SlotRecord& last = ts.trace.back();
    CHECK(last.cumulative_R[0] == doctest::Approx(ts.final_R[0]));
    CHECK(last.cumulative_P == doctest::Approx(ts.total_energy()));
}

TEST_CASE("step: chosen score never falls below idling") {
    const RadioConfig radio;
    const SimContext sim = make_sim(blocked_pair(), radio, default_mcs_table());
    ScheduleState state;
    state.slot_duration = 0.1;
    warmup(state, sim, SchedulerPolicy::ee(1.0));
    WarmPool warm;
    for (int t = 0; t < 50; ++t) {
        const double idle_score =
            -(2.0 * radio.circuit_power_mw) / state.total_energy();
        const Solution chosen = step(state, sim, SchedulerPolicy::ee(1.0), {}, warm);
        CHECK(chosen.objective >= idle_score - 1e-15);
    }
}

TEST_CASE("run_dynamic: no starvation when every link is individually feasible") {
    Deployment d;
    d.area_size = 100.0;
    d.ap_positions = {{30.0, 30.0, 3.0}, {70.0, 30.0, 3.0}, {50.0, 70.0, 3.0}};
    d.client_positions = {{30.0, 22.0, 1.0}, {70.0, 38.0, 1.0}, {50.0, 78.0, 1.0}};
    d.links = {{0, 0}, {1, 1}, {2, 2}};
    const RadioConfig radio;
    const SimContext sim = make_sim(d, radio, default_mcs_table());

    const long slots = 100 * 3;
    const TimeSeries ts = run_dynamic(sim, SchedulerPolicy::ee(1.0), slots, {}, 0.1);
    for (double R : ts.final_R) CHECK(R > 100.0 * kWarmupEpsilonMbit);
}
