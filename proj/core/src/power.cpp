#include "greenwifi/power.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace greenwifi {

namespace {

constexpr double kRelTol = 1e-9;
constexpr int kSmallCap = 32;  // stack-allocated solves up to this active-set size

using SmallMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kSmallCap, kSmallCap>;
using SmallVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kSmallCap, 1>;

std::vector<int> active_set(const RateVector& rates) {
    std::vector<int> s;
    for (int i = 0; i < static_cast<int>(rates.size()); ++i)
        if (rates[static_cast<std::size_t>(i)] > 0.0) s.push_back(i);
    return s;
}

template <typename Matrix, typename Vector>
bool solve_balance(const std::vector<int>& active, const RateVector& rates,
                   const GainMatrices& gains, const McsTable& table, PowerVector& powers) {
    const int m = static_cast<int>(active.size());
    // (I - D F) q = D n restricted to the active set, where
    // D = diag(target_i / a_ii) and F(i, j) = a_ij for i != j.
    Matrix system(m, m);
    Vector rhs(m);
    for (int row = 0; row < m; ++row) {
        const int i = active[static_cast<std::size_t>(row)];
        const double target = table.min_sinr_for_rate(rates[static_cast<std::size_t>(i)]);
        const double scale = target / gains.a(i, i);
        for (int col = 0; col < m; ++col) {
            const int j = active[static_cast<std::size_t>(col)];
            system(row, col) = (row == col) ? 1.0 : -scale * gains.a(i, j);
        }
        rhs(row) = scale * gains.noise(i);
    }

    Eigen::PartialPivLU<Matrix> lu(system);
    Vector q = lu.solve(rhs);

    // A valid solution is non-negative and actually solves the system; both
    // fail exactly when the interference spectral radius reaches 1.
    const double scale = rhs.norm() + q.norm();
    if (!q.allFinite()) return false;
    if ((system * q - rhs).norm() > kRelTol * std::max(1.0, scale)) return false;
    if (q.minCoeff() < -kRelTol * std::max(1.0, q.cwiseAbs().maxCoeff())) return false;

    for (int row = 0; row < m; ++row)
        powers[static_cast<std::size_t>(active[static_cast<std::size_t>(row)])] =
            std::max(0.0, q(row));
    return true;
}

}  // namespace

const char* to_string(ConstraintViolation v) {
    switch (v) {
        case ConstraintViolation::none: return "none";
        case ConstraintViolation::linear_system_divergence: return "linear-system-divergence";
        case ConstraintViolation::power_cap: return "power-cap";
        case ConstraintViolation::carrier_sense: return "carrier-sense";
        case ConstraintViolation::shared_transmitter: return "shared-transmitter";
    }
    return "unknown";
}

std::optional<PowerVector> min_powers(const RateVector& rates, const GainMatrices& gains,
                                      const McsTable& table) {
    const int n = gains.n();
    if (static_cast<int>(rates.size()) != n)
        throw std::invalid_argument("min_powers: rate vector length mismatch");

    const std::vector<int> active = active_set(rates);
    PowerVector powers(static_cast<std::size_t>(n), 0.0);
    if (active.empty()) return powers;

    const bool ok =
        static_cast<int>(active.size()) <= kSmallCap
            ? solve_balance<SmallMatrix, SmallVector>(active, rates, gains, table, powers)
            : solve_balance<Eigen::MatrixXd, Eigen::VectorXd>(active, rates, gains, table, powers);
    if (!ok) return std::nullopt;
    return powers;
}

FeasibilityReport check_constraints(const RateVector& rates, const PowerVector& powers,
                                    const GainMatrices& gains, const RadioConfig& config,
                                    const LinkTopology& topology) {
    const int n = gains.n();
    FeasibilityReport report;
    report.powers = powers;

    const double sense_cap = config.sense_threshold_mw();
    for (int i = 0; i < n; ++i) {
        if (powers[static_cast<std::size_t>(i)] <= 0.0) continue;
        for (int j = 0; j < n; ++j) {
            if (gains.b(i, j) * powers[static_cast<std::size_t>(j)] > sense_cap) {
                report.violated = ConstraintViolation::carrier_sense;
                return report;
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        const double p = powers[static_cast<std::size_t>(i)];
        if (p < 0.0 || p > config.max_power_mw) {
            report.violated = ConstraintViolation::power_cap;
            return report;
        }
    }
    for (int i = 0; i < n; ++i) {
        if (powers[static_cast<std::size_t>(i)] <= 0.0) continue;
        for (int j = i + 1; j < n; ++j) {
            if (powers[static_cast<std::size_t>(j)] > 0.0 && topology.shares_transmitter(i, j)) {
                report.violated = ConstraintViolation::shared_transmitter;
                return report;
            }
        }
    }
    (void)rates;
    report.feasible = true;
    return report;
}

FeasibilityReport check_constraints(const RateVector& rates, const PowerVector& powers,
                                    const GainMatrices& gains, const RadioConfig& config,
                                    const Deployment& deployment) {
    return check_constraints(rates, powers, gains, config, topology_of(deployment));
}

FeasibilityReport PowerContext::evaluate(const RateVector& rates) const {
    const int n = n_links();
    FeasibilityReport report;

    if (policy == PowerPolicy::minimal) {
        std::optional<PowerVector> powers = min_powers(rates, *gains, *table);
        if (!powers) {
            report.violated = ConstraintViolation::linear_system_divergence;
            report.powers.assign(static_cast<std::size_t>(n), 0.0);
            return report;
        }
        return check_constraints(rates, *powers, *gains, *radio, topology);
    }

    // fixed_max: every active link radiates p_hat; the targets must then be
    // met at those powers.
    PowerVector powers(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
        if (rates[static_cast<std::size_t>(i)] > 0.0)
            powers[static_cast<std::size_t>(i)] = radio->max_power_mw;

    Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(powers.data(), n);
    for (int i = 0; i < n; ++i) {
        const double r = rates[static_cast<std::size_t>(i)];
        if (r <= 0.0) continue;
        if (sinr(p, *gains, i) < table->min_sinr_for_rate(r)) {
            report.violated = ConstraintViolation::linear_system_divergence;
            report.powers = powers;
            return report;
        }
    }
    return check_constraints(rates, powers, *gains, *radio, topology);
}

ConflictGraph build_conflict_graph(const GainMatrices& gains, const McsTable& table,
                                   const RadioConfig& radio, const LinkTopology& topology,
                                   PowerPolicy policy) {
    const int n = gains.n();
    if (n > 64) throw std::invalid_argument("conflict graph supports up to 64 links");
    ConflictGraph graph;
    graph.conflict_mask.assign(static_cast<std::size_t>(n), 0);
    graph.clique_of.assign(static_cast<std::size_t>(n), -1);

    PowerContext pair_ctx{&gains, &table, &radio, topology, policy, nullptr};
    const double lowest = table.rate_at(1);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            bool conflict = topology.shares_transmitter(i, j);
            if (!conflict) {
                RateVector pair(static_cast<std::size_t>(n), 0.0);
                pair[static_cast<std::size_t>(i)] = lowest;
                pair[static_cast<std::size_t>(j)] = lowest;
                conflict = !pair_ctx.evaluate(pair).feasible;
            }
            if (conflict) {
                graph.conflict_mask[static_cast<std::size_t>(i)] |= 1ULL << j;
                graph.conflict_mask[static_cast<std::size_t>(j)] |= 1ULL << i;
            }
        }
    }

    // Greedy clique cover: join the first clique the link conflicts with
    // entirely; order is fixed, so the partition is deterministic.
    std::vector<std::uint64_t> clique_members;
    for (int i = 0; i < n; ++i) {
        bool placed = false;
        for (std::size_t c = 0; c < clique_members.size(); ++c) {
            if ((clique_members[c] & ~graph.conflict_mask[static_cast<std::size_t>(i)]) == 0) {
                clique_members[c] |= 1ULL << i;
                graph.clique_of[static_cast<std::size_t>(i)] = static_cast<int>(c);
                placed = true;
                break;
            }
        }
        if (!placed) {
            graph.clique_of[static_cast<std::size_t>(i)] = static_cast<int>(clique_members.size());
            clique_members.push_back(1ULL << i);
        }
    }
    graph.n_cliques = static_cast<int>(clique_members.size());

    // Sense-based rate caps. Under fixed powers the pair either conflicts or
    // not, so the cap only carries information for the minimal-power policy.
    const int ladder = table.size();
    graph.pair_cap.assign(static_cast<std::size_t>(n),
                          std::vector<int>(static_cast<std::size_t>(n), ladder));
    if (policy == PowerPolicy::minimal) {
        const double sense_cap = radio.sense_threshold_mw();
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (j == i || gains.b(j, i) == 0.0) continue;
                int cap = 0;
                for (int m = 1; m <= ladder; ++m) {
                    const double solo =
                        table.steps()[static_cast<std::size_t>(m - 1)].sinr_threshold *
                        gains.noise(i) / gains.a(i, i);
                    if (gains.b(j, i) * solo <= sense_cap)
                        cap = m;
                    else
                        break;
                }
                graph.pair_cap[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = cap;
            }
        }
    }
    return graph;
}

int max_solo_index(int link, const GainMatrices& gains, const McsTable& table,
                   const RadioConfig& radio) {
    for (int k = table.size(); k >= 1; --k) {
        const double target = table.steps()[static_cast<std::size_t>(k - 1)].sinr_threshold;
        const double solo_power = target * gains.noise(link) / gains.a(link, link);
        if (solo_power <= radio.max_power_mw) return k;
    }
    return 0;
}

double constraint_g(const RateVector& rates, double w, const PowerContext& ctx) {
    const FeasibilityReport report = ctx.evaluate(rates);
    if (!report.feasible) return std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (double p : report.powers) total += p + ctx.radio->circuit_power_mw;
    return std::log(total) + w;
}

}  // namespace greenwifi
