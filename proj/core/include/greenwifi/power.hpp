#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "greenwifi/channel.hpp"
#include "greenwifi/deployment.hpp"
#include "greenwifi/mcs.hpp"
#include "greenwifi/radio.hpp"

namespace greenwifi {

// Per-link target rates (0 or a table rate) and transmit powers, both mW /
// Mbit/s. Plain vectors; validity is checked where it matters.
using RateVector = std::vector<double>;
using PowerVector = std::vector<double>;

enum class ConstraintViolation {
    none,
    linear_system_divergence,  // SINR targets unreachable at any power
    power_cap,                 // some p_i exceeds its cap
    carrier_sense,             // an active transmitter senses power above the threshold
    shared_transmitter,        // two active links on one AP radio
};

const char* to_string(ConstraintViolation v);

struct FeasibilityReport {
    bool feasible = false;
    PowerVector powers;  // meaningful only when feasible
    ConstraintViolation violated = ConstraintViolation::none;
};

/// Component-wise minimal powers meeting each active link's SINR target
/// (min_sinr_for_rate of its rate), with inactive links at zero. Solves the
/// coupled linear SINR balance restricted to the active set; returns nullopt
/// when no non-negative solution exists (interference spectral radius >= 1).
/// Power caps and carrier sense are *not* checked here; see
/// check_constraints.
std::optional<PowerVector> min_powers(const RateVector& rates, const GainMatrices& gains,
                                      const McsTable& table);

/// Checks a candidate power assignment against the scheduling constraints:
/// (a) every active transmitter senses at most the carrier-sense threshold,
/// (b) 0 <= p_i <= p_hat, (c) no two active links share an AP radio.
/// Violations are reported in that order.
FeasibilityReport check_constraints(const RateVector& rates, const PowerVector& powers,
                                    const GainMatrices& gains, const RadioConfig& config,
                                    const LinkTopology& topology);
FeasibilityReport check_constraints(const RateVector& rates, const PowerVector& powers,
                                    const GainMatrices& gains, const RadioConfig& config,
                                    const Deployment& deployment);

/// How transmit powers are assigned for a candidate rate vector.
enum class PowerPolicy {
    minimal,    // component-wise minimal powers for the SINR targets
    fixed_max,  // active links transmit at p_hat (legacy-style fixed power)
};

/// Pairs of links that can never be active together, at any rate choice:
/// either they share an AP radio or even the lowest-rate pair violates the
/// constraints (which is monotone, so every higher rate pair does too).
/// Links are greedily grouped into cliques; any schedulable configuration
/// activates at most one link per clique, which gives the solver a much
/// tighter bound than the plain box corner.
///
/// pair_cap refines this rate by rate under the minimal-power policy:
/// pair_cap[i][j] is the highest ladder index link i can use while link j is
/// active at all. It comes from i's interference-free minimal power (a lower
/// bound on any actual power), which j must not sense above the threshold.
struct ConflictGraph {
    std::vector<std::uint64_t> conflict_mask;  // bit j set: links i and j conflict
    std::vector<int> clique_of;                // clique id per link
    std::vector<std::vector<int>> pair_cap;    // [i][j]; table size when unconstrained
    int n_cliques = 0;

    bool conflicts(int i, int j) const {
        return (conflict_mask[static_cast<std::size_t>(i)] >> j) & 1ULL;
    }
};

/// Everything needed to decide whether a rate vector is schedulable.
struct PowerContext {
    const GainMatrices* gains = nullptr;
    const McsTable* table = nullptr;
    const RadioConfig* radio = nullptr;
    LinkTopology topology;
    PowerPolicy policy = PowerPolicy::minimal;
    const ConflictGraph* conflicts = nullptr;  // optional solver acceleration

    int n_links() const { return topology.n_links(); }

    /// Full feasibility pipeline: assign powers per the policy, then run
    /// check_constraints. Under fixed_max the rate targets must also be
    /// reachable at the fixed powers.
    FeasibilityReport evaluate(const RateVector& rates) const;
};

ConflictGraph build_conflict_graph(const GainMatrices& gains, const McsTable& table,
                                   const RadioConfig& radio, const LinkTopology& topology,
                                   PowerPolicy policy);

/// Largest ladder index link `i` could ever reach: its interference-free
/// minimal power is a lower bound on any schedulable power, so rates whose
/// solo power already breaks the cap are out everywhere.
int max_solo_index(int link, const GainMatrices& gains, const McsTable& table,
                   const RadioConfig& radio);

/// The scalar monotone constraint used by the branch-and-bound solver:
/// returns W(r) + w when `rates` is schedulable (W = log of total power
/// including every link's circuit draw, powers from min_powers) and +infinity
/// otherwise, so that infeasibility is upward-closed in (r, w).
double constraint_g(const RateVector& rates, double w, const PowerContext& ctx);

}  // namespace greenwifi
