#include "greenwifi/fairness.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace greenwifi {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double total_power(const PowerVector& powers, double circuit_power_mw) {
    double sum = 0.0;
    for (double p : powers) sum += p + circuit_power_mw;
    return sum;
}

}  // namespace

double u_alpha(double rate, double alpha) {
    if (rate < 0.0 || alpha < 0.0) throw std::domain_error("u_alpha: negative rate or alpha");
    if (alpha == 1.0) return rate > 0.0 ? std::log(rate) : kNegInf;
    if (rate == 0.0) return alpha < 1.0 ? 0.0 : kNegInf;
    return std::pow(rate, 1.0 - alpha) / (1.0 - alpha);
}

double mean_throughput(const RateVector& rates, double alpha) {
    const std::size_t n = rates.size();
    if (n == 0) throw std::invalid_argument("mean_throughput: empty rate vector");
    if (alpha >= 1.0) {
        for (double r : rates)
            if (r == 0.0) return 0.0;
    }
    if (alpha == 1.0) {
        double sum_log = 0.0;
        for (double r : rates) sum_log += std::log(r);
        return std::exp(sum_log / static_cast<double>(n));
    }
    // U^-1(u) = ((1-alpha) u)^(1/(1-alpha)); the (1-alpha) factors cancel
    // into the plain power mean of exponent (1-alpha).
    double sum_pow = 0.0;
    for (double r : rates) sum_pow += std::pow(r, 1.0 - alpha);
    return std::pow(sum_pow / static_cast<double>(n), 1.0 / (1.0 - alpha));
}

double objective_u_hat(const RateVector& rates, const PowerVector& powers, double alpha,
                       double circuit_power_mw) {
    if (rates.size() != powers.size())
        throw std::invalid_argument("objective_u_hat: length mismatch");
    return mean_throughput(rates, alpha) / total_power(powers, circuit_power_mw);
}

double v_of(const RateVector& rates, double alpha) {
    const double mean = mean_throughput(rates, alpha);
    return mean > 0.0 ? std::log(mean) : kNegInf;
}

double w_from_powers(const PowerVector& powers, double circuit_power_mw) {
    return std::log(total_power(powers, circuit_power_mw));
}

std::optional<double> w_of(const RateVector& rates, const PowerContext& ctx) {
    const FeasibilityReport report = ctx.evaluate(rates);
    if (!report.feasible) return std::nullopt;
    return w_from_powers(report.powers, ctx.radio->circuit_power_mw);
}

DerivativeWeights derivative_weights(const std::vector<double>& cumulative_data_mbit,
                                     double cumulative_energy_mws, double alpha) {
    const std::size_t n = cumulative_data_mbit.size();
    if (n == 0) throw std::invalid_argument("derivative_weights: empty state");
    if (!(cumulative_energy_mws > 0.0))
        throw std::logic_error("derivative_weights: cumulative energy must be positive");
    double denom = 0.0;
    for (double R : cumulative_data_mbit) {
        if (!(R > 0.0))
            throw std::logic_error("derivative_weights: cumulative data must be positive (warm-up missing)");
        denom += std::pow(R, 1.0 - alpha);
    }
    DerivativeWeights w;
    w.c.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        w.c[i] = std::pow(cumulative_data_mbit[i], -alpha) / denom;
    w.power_coeff = 1.0 / cumulative_energy_mws;
    return w;
}

double slot_score(const DerivativeWeights& weights, const RateVector& rates,
                  const PowerVector& powers, double circuit_power_mw) {
    double score = 0.0;
    for (std::size_t i = 0; i < rates.size(); ++i) score += weights.c[i] * rates[i];
    return score - weights.power_coeff * total_power(powers, circuit_power_mw);
}

double log_u_hat_cumulative(const std::vector<double>& cumulative_data_mbit,
                            double cumulative_energy_mws, double alpha) {
    return v_of(cumulative_data_mbit, alpha) - std::log(cumulative_energy_mws);
}

}  // namespace greenwifi
