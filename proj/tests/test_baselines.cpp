#include <cmath>

#include "doctest.h"
#include "greenwifi/baselines.hpp"

using namespace greenwifi;

namespace {

Deployment single_ap() {
    Deployment d;
    d.area_size = 100.0;
    d.ap_positions = {{50.0, 50.0, 3.0}};
    d.client_positions = {{50.0, 45.0, 1.0}};
    d.links = {{0, 0}};
    return d;
}

/// Two APs 10 m apart: each senses the other at full power.
Deployment sensing_pair() {
    Deployment d;
    d.area_size = 100.0;
    d.ap_positions = {{45.0, 50.0, 3.0}, {55.0, 50.0, 3.0}};
    d.client_positions = {{45.0, 40.0, 1.0}, {55.0, 60.0, 1.0}};
    d.links = {{0, 0}, {1, 1}};
    return d;
}

SimContext make_sim(const Deployment& d, const RadioConfig& radio, const McsTable& table) {
    return SimContext{build_gains(d, radio), table, radio, topology_of(d)};
}

}  // namespace

TEST_CASE("legacy: single AP gets the whole channel at full power") {
    const RadioConfig radio;
    const McsTable& table = default_mcs_table();
    const Deployment d = single_ap();
    DcfConfig dcf;
    dcf.sim_slots = 20000;
    dcf.rng_seed = 5;

    const GainMatrices g = build_gains(d, radio);
    Eigen::VectorXd p(1);
    p << radio.max_power_mw;
    const double solo_rate = table.rate_for_sinr(sinr(p, g, 0));
    REQUIRE(solo_rate > 0.0);

    const TimeSeries ts = run_legacy(d, radio, table, dcf);
    const double throughput = ts.final_R[0] / ts.duration_s();
    // Airtime is lost only to residual backoff slots between packets.
    const double busy_share = static_cast<double>(dcf.packet_slots) /
                              (dcf.packet_slots + (dcf.contention_window - 1) / 2.0);
    CHECK(throughput == doctest::Approx(solo_rate * busy_share).epsilon(0.02));
    CHECK(throughput > 0.5 * solo_rate);
}

TEST_CASE("legacy: deterministic for a fixed seed, different across seeds") {
    const RadioConfig radio;
    const Deployment d = sensing_pair();
    DcfConfig dcf;
    dcf.sim_slots = 3000;
    dcf.rng_seed = 42;

    const TimeSeries a = run_legacy(d, radio, default_mcs_table(), dcf);
    const TimeSeries b = run_legacy(d, radio, default_mcs_table(), dcf);
    CHECK(a.final_R == b.final_R);
    CHECK(a.energy_tx == b.energy_tx);

    dcf.rng_seed = 43;
    const TimeSeries c = run_legacy(d, radio, default_mcs_table(), dcf);
    CHECK(a.final_R != c.final_R);
}

TEST_CASE("legacy: mutually sensing pair splits airtime evenly") {
    const RadioConfig radio;
    const Deployment d = sensing_pair();
    const GainMatrices g = build_gains(d, radio);
    // Both APs must sense each other at full power for this scenario.
    REQUIRE(g.b(0, 1) * radio.max_power_mw > radio.sense_threshold_mw());

    DcfConfig dcf;
    dcf.sim_slots = 100000;
    dcf.rng_seed = 7;
    const TimeSeries ts = run_legacy(d, radio, default_mcs_table(), dcf);

    const double share0 = ts.final_R[0] / (ts.final_R[0] + ts.final_R[1]);
    CHECK(share0 == doctest::Approx(0.5).epsilon(0.05));
    CHECK(ts.final_R[0] > 0.0);
    CHECK(ts.final_R[1] > 0.0);
}

TEST_CASE("legacy: hidden terminals collapse both links") {
    // APs at opposite edges with a raised sense threshold cannot hear each
    // other, while both clients sit near mid-field where the two signals are
    // within 2 dB, so any overlapping packet falls below the lowest MCS.
    Deployment d;
    d.area_size = 100.0;
    d.ap_positions = {{0.0, 50.0, 3.0}, {100.0, 50.0, 3.0}};
    d.client_positions = {{47.0, 50.0, 1.0}, {53.0, 50.0, 1.0}};
    d.links = {{0, 0}, {1, 1}};

    RadioConfig radio;
    radio.sense_threshold_dbm = -80.0;  // hidden: AP-AP sensed power is ~-86 dBm
    const GainMatrices g = build_gains(d, radio);
    const double ap_ap_gain = linear_gain(d.ap_positions[0], d.ap_positions[1], radio);
    REQUIRE(ap_ap_gain * radio.max_power_mw < dbm_to_mw(radio.sense_threshold_dbm));

    // Either link alone would be fine.
    Eigen::VectorXd solo(2);
    solo << radio.max_power_mw, 0.0;
    const double solo_rate = default_mcs_table().rate_for_sinr(sinr(solo, g, 0));
    REQUIRE(solo_rate > 0.0);
    // Under mutual interference both receivers drop below the lowest step.
    Eigen::VectorXd both(2);
    both << radio.max_power_mw, radio.max_power_mw;
    REQUIRE(default_mcs_table().rate_for_sinr(sinr(both, g, 0)) == 0.0);
    REQUIRE(default_mcs_table().rate_for_sinr(sinr(both, g, 1)) == 0.0);

    DcfConfig dcf;
    dcf.sense_threshold_dbm = radio.sense_threshold_dbm;
    dcf.contention_window = 8;  // near-saturated duty cycle: persistent transmitters
    dcf.packet_slots = 64;
    dcf.sim_slots = 50000;
    dcf.rng_seed = 11;
    const TimeSeries ts = run_legacy(d, radio, default_mcs_table(), dcf);

    const double t0 = ts.final_R[0] / ts.duration_s();
    const double t1 = ts.final_R[1] / ts.duration_s();
    // Blind overlap kills almost every slot for both links.
    CHECK(t0 < 0.1 * solo_rate);
    CHECK(t1 < 0.1 * solo_rate);
}

TEST_CASE("scheduling-only: single AP transmits every slot at full power") {
    const RadioConfig radio;
    const McsTable& table = default_mcs_table();
    const SimContext sim = make_sim(single_ap(), radio, table);

    const TimeSeries ts = run_scheduling_only(sim, 500, {}, 0.1, true);
    const GainMatrices& g = sim.gains;
    Eigen::VectorXd p(1);
    p << radio.max_power_mw;
    const double full_rate = table.rate_for_sinr(sinr(p, g, 0));
    CHECK(ts.final_R[0] / ts.duration_s() == doctest::Approx(full_rate).epsilon(1e-9));
    for (const SlotRecord& rec : ts.trace) CHECK(rec.powers[0] == doctest::Approx(radio.max_power_mw));
}

TEST_CASE("scheduling-only: blocked pair alternates with equal long-run throughput") {
    const RadioConfig radio;
    const SimContext sim = make_sim(sensing_pair(), radio, default_mcs_table());
    const TimeSeries ts = run_scheduling_only(sim, 2000, {}, 0.1);
    const double t0 = ts.final_R[0];
    const double t1 = ts.final_R[1];
    CHECK(std::abs(t0 - t1) / (t0 + t1) < 0.01);
    CHECK(t0 > 0.0);
}

TEST_CASE("power scheduling: reduced power unlocks coexistence the fixed-power mode forbids") {
    // Two well-separated links with close clients: at p_hat each AP senses
    // the other, but the minimal powers for a mid-ladder rate are far below
    // the sense threshold.
    Deployment d;
    d.area_size = 100.0;
    d.ap_positions = {{5.0, 5.0, 3.0}, {95.0, 95.0, 3.0}};
    d.client_positions = {{5.0, 10.0, 1.0}, {95.0, 90.0, 1.0}};
    d.links = {{0, 0}, {1, 1}};
    const RadioConfig radio;
    const McsTable& table = default_mcs_table();
    const SimContext sim = make_sim(d, radio, table);

    const PowerContext fixed = sim.power_context(PowerPolicy::fixed_max);
    const PowerContext minimal = sim.power_context(PowerPolicy::minimal);

    const double mid_rate = table.rate_at(5);
    CHECK_FALSE(fixed.evaluate({mid_rate, mid_rate}).feasible);
    const auto both = minimal.evaluate({mid_rate, mid_rate});
    REQUIRE(both.feasible);
    CHECK(both.powers[0] < 1.0);

    const TimeSeries ts = run_power_scheduling(sim, 400, {}, 0.1, true);
    // Simultaneous activity must actually occur.
    bool concurrent = false;
    for (const SlotRecord& rec : ts.trace)
        if (rec.rates[0] > 0.0 && rec.rates[1] > 0.0) concurrent = true;
    CHECK(concurrent);

    const TimeSeries fixed_ts = run_scheduling_only(sim, 400, {}, 0.1);
    const double sum_ps = ts.final_R[0] + ts.final_R[1];
    const double sum_so = fixed_ts.final_R[0] + fixed_ts.final_R[1];
    CHECK(sum_ps > sum_so);
}

TEST_CASE("power scheduling: single link matches scheduling-only throughput") {
    // On a step ladder, power tuning cannot beat having the whole channel.
    const RadioConfig radio;
    const SimContext sim = make_sim(single_ap(), radio, default_mcs_table());
    const TimeSeries ps = run_power_scheduling(sim, 300, {}, 0.1);
    const TimeSeries so = run_scheduling_only(sim, 300, {}, 0.1);
    CHECK(ps.final_R[0] == doctest::Approx(so.final_R[0]).epsilon(1e-12));
    CHECK(ps.energy_tx <= so.energy_tx);  // same rates from minimal rather than full power
}

TEST_CASE("baselines: constraints respected in every recorded slot") {
    const RadioConfig radio;
    const SimContext sim = make_sim(sensing_pair(), radio, default_mcs_table());

    for (const TimeSeries& ts :
         {run_scheduling_only(sim, 200, {}, 0.1, true), run_power_scheduling(sim, 200, {}, 0.1, true)}) {
        for (const SlotRecord& rec : ts.trace) {
            const auto report =
                check_constraints(rec.rates, rec.powers, sim.gains, radio, sim.topology);
            CHECK(report.feasible);
        }
    }

    Deployment d = sensing_pair();
    DcfConfig dcf;
    dcf.sim_slots = 500;
    const TimeSeries legacy = run_legacy(d, radio, default_mcs_table(), dcf, 0.1, true);
    for (const SlotRecord& rec : legacy.trace)
        for (double p : rec.powers) CHECK(p <= radio.max_power_mw);
}
