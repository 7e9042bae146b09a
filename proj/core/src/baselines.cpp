#include "greenwifi/baselines.hpp"

#include <random>
#include <stdexcept>
#include <vector>

#include "greenwifi/channel.hpp"
#include "greenwifi/rng.hpp"

namespace greenwifi {

namespace {

struct ApState {
    int backoff = 0;
    int remaining_tx = 0;        // slots left of the current packet, 0 = idle
    int current_link = -1;       // link served by the ongoing packet
    std::size_t next_client = 0; // round-robin cursor over the AP's links
    std::vector<int> links;      // links (clients) served by this AP
};

}  // namespace

TimeSeries run_legacy(const Deployment& deployment, const RadioConfig& radio,
                      const McsTable& table, const DcfConfig& dcf, double slot_duration,
                      bool record_trace) {
    deployment.validate();
    if (dcf.contention_window < 1) throw std::invalid_argument("dcf: contention_window must be >= 1");
    if (dcf.packet_slots < 1) throw std::invalid_argument("dcf: packet_slots must be >= 1");

    const int n_links = deployment.n_links();
    const int n_aps = static_cast<int>(deployment.ap_positions.size());
    const double p_tx = dcf.tx_power_mw;
    const double sense_cap = dbm_to_mw(dcf.sense_threshold_dbm);
    const double noise_mw = noise_power_mw(radio);

    // AP-to-AP gains for carrier sensing and client-from-AP gains for SINR.
    Eigen::MatrixXd ap_gain = Eigen::MatrixXd::Zero(n_aps, n_aps);
    for (int u = 0; u < n_aps; ++u)
        for (int v = 0; v < n_aps; ++v)
            if (u != v)
                ap_gain(u, v) = linear_gain(deployment.ap_positions[static_cast<std::size_t>(v)],
                                            deployment.ap_positions[static_cast<std::size_t>(u)], radio);
    Eigen::MatrixXd client_gain(n_links, n_aps);
    for (int i = 0; i < n_links; ++i) {
        const Vec3& rx = deployment.client_positions[static_cast<std::size_t>(deployment.links[static_cast<std::size_t>(i)].second)];
        for (int v = 0; v < n_aps; ++v)
            client_gain(i, v) = linear_gain(deployment.ap_positions[static_cast<std::size_t>(v)], rx, radio);
    }

    // Transmit MCS per link: what rate adaptation converges to on a clean
    // channel. A slot delivers that rate only while the live SINR still
    // supports it; an overlap that undercuts the transmitted MCS is a
    // collision and delivers nothing.
    std::vector<double> tx_rate(static_cast<std::size_t>(n_links));
    std::vector<double> tx_sinr_floor(static_cast<std::size_t>(n_links));
    for (int i = 0; i < n_links; ++i) {
        const int ap = deployment.links[static_cast<std::size_t>(i)].first;
        const double solo = client_gain(i, ap) * p_tx / noise_mw;
        tx_rate[static_cast<std::size_t>(i)] = table.rate_for_sinr(solo);
        tx_sinr_floor[static_cast<std::size_t>(i)] =
            table.min_sinr_for_rate(tx_rate[static_cast<std::size_t>(i)]);
    }

    std::vector<ApState> aps(static_cast<std::size_t>(n_aps));
    for (int i = 0; i < n_links; ++i)
        aps[static_cast<std::size_t>(deployment.links[static_cast<std::size_t>(i)].first)].links.push_back(i);

    std::mt19937_64 rng(dcf.rng_seed);
    const auto draw_backoff = [&]() {
        return static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(dcf.contention_window)));
    };
    for (ApState& ap : aps)
        if (!ap.links.empty()) ap.backoff = draw_backoff();

    TimeSeries ts;
    ts.n_links = n_links;
    ts.slot_duration = slot_duration;
    ts.total_slots = dcf.sim_slots;
    ts.final_R.assign(static_cast<std::size_t>(n_links), 0.0);
    const double dt = ts.slot_duration;

    std::vector<int> transmitting;  // AP indices with an ongoing packet
    for (long slot = 0; slot < dcf.sim_slots; ++slot) {
        // Contention decisions look at packets already on the air.
        transmitting.clear();
        for (int u = 0; u < n_aps; ++u)
            if (aps[static_cast<std::size_t>(u)].remaining_tx > 0) transmitting.push_back(u);

        for (int u = 0; u < n_aps; ++u) {
            ApState& ap = aps[static_cast<std::size_t>(u)];
            if (ap.links.empty() || ap.remaining_tx > 0) continue;
            bool busy = false;
            for (int v : transmitting)
                if (ap_gain(u, v) * p_tx > sense_cap) {
                    busy = true;
                    break;
                }
            if (busy) continue;  // freeze the counter while the medium is sensed busy
            if (ap.backoff > 0) {
                ap.backoff -= 1;
                continue;
            }
            // Counter expired on an idle slot: start a packet now. Two APs
            // starting in the same slot cannot sense each other in time.
            ap.remaining_tx = dcf.packet_slots;
            ap.current_link = ap.links[ap.next_client % ap.links.size()];
            ap.next_client += 1;
            ap.backoff = draw_backoff();
        }

        // Deliver this slot with SINR over everything now on the air.
        transmitting.clear();
        for (int u = 0; u < n_aps; ++u)
            if (aps[static_cast<std::size_t>(u)].remaining_tx > 0) transmitting.push_back(u);

        RateVector rates(static_cast<std::size_t>(n_links), 0.0);
        PowerVector powers(static_cast<std::size_t>(n_links), 0.0);
        for (int u : transmitting) {
            const ApState& ap = aps[static_cast<std::size_t>(u)];
            const int link = ap.current_link;
            double interference = 0.0;
            for (int v : transmitting)
                if (v != u) interference += client_gain(link, v) * p_tx;
            const double gamma = client_gain(link, u) * p_tx / (noise_mw + interference);
            const bool decodable = tx_rate[static_cast<std::size_t>(link)] > 0.0 &&
                                   gamma >= tx_sinr_floor[static_cast<std::size_t>(link)];
            rates[static_cast<std::size_t>(link)] = decodable ? tx_rate[static_cast<std::size_t>(link)] : 0.0;
            powers[static_cast<std::size_t>(link)] = p_tx;
            ts.final_R[static_cast<std::size_t>(link)] += rates[static_cast<std::size_t>(link)] * dt;
        }
        ts.energy_tx += static_cast<double>(transmitting.size()) * p_tx * dt;
        ts.energy_floor += static_cast<double>(n_links) * radio.circuit_power_mw * dt;

        if (record_trace) {
            SlotRecord rec;
            rec.slot = slot;
            rec.rates = rates;
            rec.powers = powers;
            rec.cumulative_R = ts.final_R;
            rec.cumulative_P = ts.total_energy();
            ts.trace.push_back(std::move(rec));
        }

        for (int u : transmitting) {
            ApState& ap = aps[static_cast<std::size_t>(u)];
            ap.remaining_tx -= 1;
            if (ap.remaining_tx == 0) ap.current_link = -1;
        }
    }
    return ts;
}

TimeSeries run_scheduling_only(const SimContext& sim, long total_slots,
                               const SolverConfig& solver_config, double slot_duration,
                               bool record_trace) {
    return run_dynamic(sim, SchedulerPolicy::scheduling_only(), total_slots, solver_config,
                       slot_duration, record_trace);
}

TimeSeries run_power_scheduling(const SimContext& sim, long total_slots,
                                const SolverConfig& solver_config, double slot_duration,
                                bool record_trace) {
    return run_dynamic(sim, SchedulerPolicy::power_scheduling(), total_slots, solver_config,
                       slot_duration, record_trace);
}

}  // namespace greenwifi
