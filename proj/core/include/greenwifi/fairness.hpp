#pragma once

#include <optional>
#include <vector>

#include "greenwifi/power.hpp"

namespace greenwifi {

/// Alpha-fair utility of a single rate:
///   log(rate)                     for alpha = 1
///   rate^(1-alpha) / (1-alpha)    otherwise (alpha >= 0)
/// Zero rates yield -infinity for alpha >= 1 and 0 for alpha < 1.
double u_alpha(double rate, double alpha);

/// Generalized (power) mean implied by u_alpha: arithmetic mean at alpha=0,
/// geometric at alpha=1, harmonic at alpha=2. Any zero rate collapses the
/// mean to 0 when alpha >= 1.
double mean_throughput(const RateVector& rates, double alpha);

/// The objective: mean throughput divided by total consumed power, where
/// every link is charged its circuit power whether or not it transmits.
/// Units: Mbit/s per mW.
double objective_u_hat(const RateVector& rates, const PowerVector& powers, double alpha,
                       double circuit_power_mw);

/// log of the mean throughput; the increasing half of the decomposition
/// log U_hat = v_of - w_of.
double v_of(const RateVector& rates, double alpha);

/// log of total power (transmit plus all circuit draws) for the given
/// powers; the decreasing-cost half of the decomposition.
double w_from_powers(const PowerVector& powers, double circuit_power_mw);

/// w_of on a rate vector: minimal powers for `rates`, then w_from_powers.
/// nullopt when the rate vector is not schedulable under `ctx`.
std::optional<double> w_of(const RateVector& rates, const PowerContext& ctx);

/// Linear weights of the per-slot score, from the derivative of the
/// cumulative objective log(U^-1(mean U(R_i)) / P):
///   c[i]       = R_i^-alpha / sum_j R_j^(1-alpha)
///   power_coeff = 1 / P
/// The slot score of a configuration (r, p) is then
///   sum_i c[i] r_i - power_coeff * (sum_i p_i + N p_c).
struct DerivativeWeights {
    std::vector<double> c;
    double power_coeff = 0.0;
};

/// Requires every cumulative R_i > 0 and P > 0 (established by scheduler
/// warm-up); throws std::logic_error otherwise.
DerivativeWeights derivative_weights(const std::vector<double>& cumulative_data_mbit,
                                     double cumulative_energy_mws, double alpha);

double slot_score(const DerivativeWeights& weights, const RateVector& rates,
                  const PowerVector& powers, double circuit_power_mw);

/// The cumulative objective the derivative weights differentiate:
/// v_of(R) - log P.
double log_u_hat_cumulative(const std::vector<double>& cumulative_data_mbit,
                            double cumulative_energy_mws, double alpha);

}  // namespace greenwifi
