#include "greenwifi/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace greenwifi {

double pathloss_db(double distance_m, double carrier_freq_ghz) {
    if (!(distance_m > 0.0)) throw std::domain_error("pathloss_db: distance must be positive");
    double loss = 40.05 + 20.0 * std::log10(carrier_freq_ghz / 2.4) +
                  20.0 * std::log10(std::min(distance_m, 10.0));
    if (distance_m > 10.0) loss += 35.0 * std::log10(0.1 * distance_m);
    return loss;
}

double noise_power_mw(const RadioConfig& config) {
    const double dbm = config.noise_psd_dbm_hz + 10.0 * std::log10(config.channel_width_hz) +
                       config.amplifier_noise_db;
    return dbm_to_mw(dbm);
}

double linear_gain(const Vec3& tx, const Vec3& rx, const RadioConfig& config) {
    const double d = distance(tx, rx);
    if (!(d > 0.0)) throw std::domain_error("linear_gain: coincident transmitter and receiver");
    return std::min(1.0, db_to_linear(-pathloss_db(d, config.carrier_freq_ghz)));
}

void GainMatrices::validate() const {
    const int size = n();
    if (a.rows() != size || a.cols() != size || b.rows() != size || b.cols() != size)
        throw std::invalid_argument("gains: inconsistent dimensions");
    for (int i = 0; i < size; ++i) {
        if (!(a(i, i) > 0.0)) throw std::invalid_argument("gains: a(i,i) must be positive");
        if (b(i, i) != 0.0) throw std::invalid_argument("gains: b(i,i) must be zero");
        if (!(noise(i) > 0.0) || !std::isfinite(noise(i)))
            throw std::invalid_argument("gains: noise must be positive and finite");
        for (int j = 0; j < size; ++j) {
            if (!std::isfinite(a(i, j)) || a(i, j) < 0.0 || a(i, j) > 1.0)
                throw std::invalid_argument("gains: a entries must lie in [0, 1]");
            if (!std::isfinite(b(i, j)) || b(i, j) < 0.0 || b(i, j) > 1.0)
                throw std::invalid_argument("gains: b entries must lie in [0, 1]");
        }
    }
}

GainMatrices build_gains(const Deployment& deployment, const RadioConfig& config) {
    const int n = deployment.n_links();
    GainMatrices g;
    g.a.resize(n, n);
    g.b.resize(n, n);
    g.noise.resize(n);

    const double noise_mw = noise_power_mw(config);
    for (int i = 0; i < n; ++i) {
        const Vec3& rx_i = deployment.client_positions[deployment.links[i].second];
        const Vec3& tx_i = deployment.ap_positions[deployment.links[i].first];
        for (int j = 0; j < n; ++j) {
            const Vec3& tx_j = deployment.ap_positions[deployment.links[j].first];
            g.a(i, j) = linear_gain(tx_j, rx_i, config);
            const bool same_radio = deployment.links[i].first == deployment.links[j].first;
            g.b(i, j) = same_radio ? 0.0 : linear_gain(tx_j, tx_i, config);
        }
        g.noise(i) = noise_mw;
    }
    return g;
}

double sinr(const Eigen::VectorXd& p, const GainMatrices& gains, int link) {
    if (p(link) <= 0.0) return 0.0;
    double interference = 0.0;
    for (int j = 0; j < gains.n(); ++j)
        if (j != link) interference += gains.a(link, j) * p(j);
    return gains.a(link, link) * p(link) / (gains.noise(link) + interference);
}

}  // namespace greenwifi
