#pragma once

#include <functional>
#include <span>
#include <vector>

#include "greenwifi/power.hpp"

namespace greenwifi {

/// A monotone objective split as value-minus-cost. Both halves must be
/// nondecreasing: `v` in the rate vector, `w_cost` in the power vector.
/// The solver maximizes v(r) - w_cost(p(r)) over schedulable rate vectors.
/// w_cost receives the per-link transmit powers only; any circuit-power
/// terms belong inside the callback.
///
/// When v is of the form sum_i linear_v[i] * r_i, populate `linear_v` as
/// well (v itself is still consulted for corner values); the solver then
/// combines it with the conflict cliques of the context for a much tighter
/// upper bound. Leave it empty for opaque v.
struct MonotoneObjective {
    std::function<double(const RateVector&)> v;
    std::function<double(const PowerVector&)> w_cost;
    std::vector<double> linear_v;
};

struct SolverConfig {
    double epsilon = 1e-6;         // relative optimality tolerance
    long max_iterations = 100000;  // boxes examined before giving up
    enum class TieBreak { lowest_index } tie_break = TieBreak::lowest_index;
};

enum class SolveStatus { optimal, iteration_capped };

struct Solution {
    RateVector rates;
    PowerVector powers;
    std::vector<int> rate_indices;  // ladder index per link (0 = off)
    double objective = 0.0;
    double bound_gap = 0.0;
    long iterations = 0;
    SolveStatus status = SolveStatus::optimal;
};

/// Rate-ladder index ranges explored by the solver, with the auxiliary w
/// interval of the lifted formulation max V(r) + w s.t. W(r) + w <= 0.
struct Box {
    std::vector<int> lo, hi;
    double w_lo = 0.0, w_hi = 0.0;
};

/// Optional audit trail of every pruning decision, for tests that replay
/// them against exhaustive enumeration.
struct SolveAudit {
    enum class Reason { infeasible_lower_corner, bound };
    struct PrunedBox {
        Box box;
        Reason reason;
        double upper_bound;
    };
    std::vector<PrunedBox> pruned;
    double final_objective = 0.0;
};

/// Branch-and-bound maximization of a difference of monotone functions over
/// the finite per-link rate ladders, subject to the schedulability
/// constraint of `ctx` (upward-closed infeasibility).
///
/// Boxes are kept in a priority list ordered by upper bound V(r_hi) + w_hi
/// (ties broken oldest-first). A box is pruned when the constraint already
/// fails at its lower corner or when its upper bound cannot beat the
/// incumbent by more than the relative epsilon; a box whose upper corner
/// satisfies the lifted constraint closes with that corner as incumbent.
/// Otherwise the box splits at the midpoint of the rate coordinate with the
/// most remaining steps (ties -> lowest link index); the w interval is
/// resolved analytically once a box is a single rate point, so it is
/// effectively split last. Fully deterministic for fixed inputs and config.
///
/// `warm_starts` (ladder index vectors) seed the incumbent with every
/// schedulable candidate before the search; useful when re-solving a slowly
/// drifting objective, where the previous few choices are already close to
/// optimal and let the bound prune most of the space.
Solution solve(const PowerContext& ctx, const MonotoneObjective& objective,
               const SolverConfig& config = {},
               std::span<const std::vector<int>> warm_starts = {}, SolveAudit* audit = nullptr);

/// Exhaustive enumeration of every rate-index vector. Exact; refuses
/// instances with more than 10^6 candidates (throws std::invalid_argument).
/// Ties resolve to the lexicographically smallest index vector.
Solution brute_force(const PowerContext& ctx, const MonotoneObjective& objective);

/// The static energy-efficiency objective: v = log mean throughput at
/// `alpha`, w_cost = log total power including all circuit draws.
MonotoneObjective static_ee_objective(double alpha, double circuit_power_mw, int n_links);

}  // namespace greenwifi
