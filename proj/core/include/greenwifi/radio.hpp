#pragma once

#include <cmath>
#include <stdexcept>

namespace greenwifi {

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// Per-device radio parameters shared by every link.
///
/// Defaults follow a dense indoor 5 GHz deployment: 80 MHz channel,
/// thermal noise floor -174 dBm/Hz with a 7 dB amplifier figure, 40 mW
/// transmit cap, -96 dBm sense threshold. circuit_power_mw is the constant
/// per-link draw charged whether or not the link transmits; the 1000 mW
/// default is an order-of-magnitude idle figure and is meant to be
/// overridden by the experiment config.
struct RadioConfig {
    double carrier_freq_ghz = 5.21;
    double channel_width_hz = 80e6;
    double noise_psd_dbm_hz = -174.0;
    double amplifier_noise_db = 7.0;
    double max_power_mw = 40.0;       // per-link cap p_hat
    double circuit_power_mw = 1000.0; // p_c
    double sense_threshold_dbm = -96.0;

    double sense_threshold_mw() const { return dbm_to_mw(sense_threshold_dbm); }

    void validate() const {
        if (!(carrier_freq_ghz > 0.0)) throw std::invalid_argument("carrier_freq_ghz must be positive");
        if (!(channel_width_hz > 0.0)) throw std::invalid_argument("channel_width_hz must be positive");
        if (!(max_power_mw > 0.0)) throw std::invalid_argument("max_power_mw must be positive");
        if (!(circuit_power_mw > 0.0)) throw std::invalid_argument("circuit_power_mw must be positive");
        if (!std::isfinite(sense_threshold_dbm)) throw std::invalid_argument("sense_threshold_dbm must be finite");
        if (!std::isfinite(noise_psd_dbm_hz)) throw std::invalid_argument("noise_psd_dbm_hz must be finite");
        if (!std::isfinite(amplifier_noise_db)) throw std::invalid_argument("amplifier_noise_db must be finite");
    }
};

}  // namespace greenwifi
