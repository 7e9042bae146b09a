#include <benchmark/benchmark.h>

#include "greenwifi/experiment.hpp"

using namespace greenwifi;

namespace {

ExperimentConfig bench_config() {
    ExperimentConfig cfg;
    cfg.radio.circuit_power_mw = 1.0;
    cfg.scenario.n_clients = 10;
    cfg.scenario.placement_restarts = 4;
    return cfg;
}

SimContext bench_sim(int ap_count) {
    static ExperimentConfig cfg = bench_config();
    Deployment d = make_deployment(ap_count, cfg.scenario, 1);
    return make_sim_context(cfg, d);
}

void BM_Pathloss(benchmark::State& state) {
    double d = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pathloss_db(d, 5.21));
        d = d < 150.0 ? d + 0.1 : 0.5;
    }
}
BENCHMARK(BM_Pathloss);

void BM_BuildGains(benchmark::State& state) {
    ExperimentConfig cfg = bench_config();
    Deployment d = make_deployment(static_cast<int>(state.range(0)), cfg.scenario, 1);
    for (auto _ : state) benchmark::DoNotOptimize(build_gains(d, cfg.radio));
}
BENCHMARK(BM_BuildGains)->Arg(5)->Arg(30);

void BM_MinPowers(benchmark::State& state) {
    const SimContext sim = bench_sim(static_cast<int>(state.range(0)));
    RateVector rates(static_cast<std::size_t>(sim.n_links()), 0.0);
    for (std::size_t i = 0; i < rates.size(); i += 2) rates[i] = sim.table.rate_at(1);
    for (auto _ : state) benchmark::DoNotOptimize(min_powers(rates, sim.gains, sim.table));
}
BENCHMARK(BM_MinPowers)->Arg(5)->Arg(10)->Arg(30);

void BM_SchedulerStep(benchmark::State& state) {
    const SimContext sim = bench_sim(10);
    const SchedulerPolicy policy = SchedulerPolicy::ee(1.0);
    const ConflictGraph conflicts =
        build_conflict_graph(sim.gains, sim.table, sim.radio, sim.topology, policy.power);
    ScheduleState st;
    st.slot_duration = 0.1;
    warmup(st, sim, policy);
    WarmPool pool;
    SolverConfig solver{.epsilon = 1e-3, .max_iterations = 2000};
    for (auto _ : state) benchmark::DoNotOptimize(step(st, sim, policy, solver, pool, &conflicts));
}
BENCHMARK(BM_SchedulerStep)->Unit(benchmark::kMillisecond);

void BM_StaticSolve(benchmark::State& state) {
    ExperimentConfig cfg = bench_config();
    Deployment d = make_deployment(3, cfg.scenario, 2);
    d.client_positions.resize(3);
    d.links = associate(d.ap_positions, d.client_positions);
    const SimContext sim = make_sim_context(cfg, d);
    const PowerContext ctx = sim.power_context(PowerPolicy::minimal);
    const MonotoneObjective obj = static_ee_objective(1.0, cfg.radio.circuit_power_mw, 3);
    for (auto _ : state) benchmark::DoNotOptimize(solve(ctx, obj));
}
BENCHMARK(BM_StaticSolve)->Unit(benchmark::kMicrosecond);

void BM_PlaceAps(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(place_aps(static_cast<int>(state.range(0)), 100.0, 7, 4));
}
BENCHMARK(BM_PlaceAps)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_LegacySlotted(benchmark::State& state) {
    ExperimentConfig cfg = bench_config();
    Deployment d = make_deployment(10, cfg.scenario, 1);
    DcfConfig dcf = cfg.dcf;
    dcf.sim_slots = 1000;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_legacy(d, cfg.radio, cfg.mcs, dcf));
}
BENCHMARK(BM_LegacySlotted)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
