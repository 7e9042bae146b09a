#pragma once

#include <Eigen/Dense>

#include "greenwifi/deployment.hpp"
#include "greenwifi/radio.hpp"

namespace greenwifi {

/// Indoor 5 GHz pathloss in dB at 3D distance `distance_m`:
/// free-space-like up to 10 m, then a steeper 3.5-exponent decay.
/// Throws std::domain_error for non-positive distances.
/// Continuous at 10 m and nondecreasing in distance.
double pathloss_db(double distance_m, double carrier_freq_ghz);

/// Thermal noise power over the channel, in mW:
/// noise_psd + 10*log10(width) + amplifier figure, converted to linear.
double noise_power_mw(const RadioConfig& config);

/// Linear power gain between two positions (pathloss converted to linear,
/// clipped to at most 1). Throws std::domain_error on coincident positions.
double linear_gain(const Vec3& tx, const Vec3& rx, const RadioConfig& config);

/// Per-link gain matrices.
///   a(i, j): gain from transmitter of link j to receiver of link i
///   b(i, j): gain from transmitter of link j to transmitter of link i
///   noise(i): noise power at receiver i, mW
/// b(i, j) is zero whenever links i and j use the same AP radio: a radio
/// does not carrier-sense itself, and same-radio exclusion is enforced as a
/// scheduling constraint instead.
struct GainMatrices {
    Eigen::MatrixXd a;
    Eigen::MatrixXd b;
    Eigen::VectorXd noise;

    int n() const { return static_cast<int>(noise.size()); }

    /// Throws std::invalid_argument if entries are outside [0, 1], a
    /// diagonal of `a` vanishes, or a diagonal of `b` is nonzero.
    void validate() const;
};

GainMatrices build_gains(const Deployment& deployment, const RadioConfig& config);

/// SINR of `link` under transmit powers `p` (mW). Returns 0 when p[link] is 0.
double sinr(const Eigen::VectorXd& p, const GainMatrices& gains, int link);

}  // namespace greenwifi
