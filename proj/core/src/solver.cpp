#include "greenwifi/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "greenwifi/fairness.hpp"

namespace greenwifi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct IndexVectorHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = 1469598103934665603ULL;
        for (int x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b9;
            h *= 1099511628211ULL;
        }
        return h;
    }
};

struct CornerEval {
    bool feasible = false;
    PowerVector powers;
    double v = -kInf;
    double neg_w = -kInf;  // -w_cost(powers); only meaningful when feasible
};

/// Memoizing corner evaluator; corners repeat heavily between parent and
/// child boxes.
class Evaluator {
  public:
    Evaluator(const PowerContext& ctx, const MonotoneObjective& objective)
        : ctx_(ctx), objective_(objective) {}

    const CornerEval& eval(const std::vector<int>& indices) {
        auto it = cache_.find(indices);
        if (it != cache_.end()) return it->second;

        CornerEval e;
        RateVector rates(indices.size());
        for (std::size_t i = 0; i < indices.size(); ++i)
            rates[i] = ctx_.table->rate_at(indices[i]);
        e.v = objective_.v(rates);
        FeasibilityReport report = ctx_.evaluate(rates);
        e.feasible = report.feasible;
        if (report.feasible) {
            e.neg_w = -objective_.w_cost(report.powers);
            e.powers = std::move(report.powers);
        }
        return cache_.emplace(indices, std::move(e)).first->second;
    }

    std::size_t evaluations() const { return cache_.size(); }

  private:
    const PowerContext& ctx_;
    const MonotoneObjective& objective_;
    std::unordered_map<std::vector<int>, CornerEval, IndexVectorHash> cache_;
};

double prune_threshold(double incumbent, double epsilon) {
    if (incumbent == -kInf) return -kInf;
    return incumbent + epsilon * std::abs(incumbent);
}

struct QueuedBox {
    double ub;
    long seq;
    Box box;
};

struct QueueOrder {
    bool operator()(const QueuedBox& a, const QueuedBox& b) const {
        if (a.ub != b.ub) return a.ub < b.ub;
        return a.seq > b.seq;  // ties: oldest box first
    }
};

struct Incumbent {
    double value = -kInf;
    std::vector<int> indices;
    PowerVector powers;
    bool set = false;
};

void offer(Incumbent& inc, double value, const std::vector<int>& indices, const PowerVector& powers) {
    if (!inc.set || value > inc.value) {
        inc.value = value;
        inc.indices = indices;
        inc.powers = powers;
        inc.set = true;
    }
}

}  // namespace

Solution solve(const PowerContext& ctx, const MonotoneObjective& objective,
               const SolverConfig& config, std::span<const std::vector<int>> warm_starts,
               SolveAudit* audit) {
    if (!(config.epsilon > 0.0)) throw std::invalid_argument("solver: epsilon must be positive");
    if (config.max_iterations < 1) throw std::invalid_argument("solver: max_iterations must be >= 1");

    const int n = ctx.n_links();
    const int ladder = ctx.table->size();
    Evaluator evaluator(ctx, objective);

    // Clique-aware upper bound on the v part of a box: at most one link per
    // conflict clique can be active, so each clique contributes its best
    // member (or a forced member when the lower corner pins one active).
    // Links the lower corner pins active also cap everyone else's usable
    // ladder index through the pairwise sense limits. Returns nullopt when
    // the caps contradict a link's own lower bound (box provably empty).
    const bool use_cliques = ctx.conflicts && !objective.linear_v.empty() &&
                             static_cast<int>(objective.linear_v.size()) == n;
    std::vector<int> forced_links;
    std::vector<double> clique_best;
    std::vector<double> clique_forced;
    auto v_upper_bound = [&](const Box& box) -> std::optional<double> {
        const ConflictGraph& graph = *ctx.conflicts;
        forced_links.clear();
        for (int i = 0; i < n; ++i)
            if (box.lo[static_cast<std::size_t>(i)] > 0) forced_links.push_back(i);

        clique_best.assign(static_cast<std::size_t>(graph.n_cliques), 0.0);
        clique_forced.assign(static_cast<std::size_t>(graph.n_cliques), -1.0);
        for (int i = 0; i < n; ++i) {
            int top_idx = box.hi[static_cast<std::size_t>(i)];
            for (int j : forced_links)
                if (j != i)
                    top_idx = std::min(top_idx,
                                       graph.pair_cap[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
            const bool is_forced = box.lo[static_cast<std::size_t>(i)] > 0;
            if (is_forced && top_idx < box.lo[static_cast<std::size_t>(i)]) return std::nullopt;
            const double top = objective.linear_v[static_cast<std::size_t>(i)] * ctx.table->rate_at(top_idx);
            const int c = graph.clique_of[static_cast<std::size_t>(i)];
            if (is_forced)
                clique_forced[static_cast<std::size_t>(c)] =
                    std::max(clique_forced[static_cast<std::size_t>(c)], top);
            clique_best[static_cast<std::size_t>(c)] =
                std::max(clique_best[static_cast<std::size_t>(c)], top);
        }
        double bound = 0.0;
        for (int c = 0; c < graph.n_cliques; ++c)
            bound += clique_forced[static_cast<std::size_t>(c)] >= 0.0
                         ? clique_forced[static_cast<std::size_t>(c)]
                         : std::max(0.0, clique_best[static_cast<std::size_t>(c)]);
        return bound;
    };

    // Global w interval [-W(p_hat), -W(0)]: any schedulable configuration
    // keeps its powers within the caps, so its -W lands inside.
    const double w_hi_global = -objective.w_cost(PowerVector(static_cast<std::size_t>(n), 0.0));
    const double w_lo_global =
        -objective.w_cost(PowerVector(static_cast<std::size_t>(n), ctx.radio->max_power_mw));

    Incumbent incumbent;

    // The all-idle configuration is always schedulable and seeds the incumbent.
    {
        const std::vector<int> zeros(static_cast<std::size_t>(n), 0);
        const CornerEval& e = evaluator.eval(zeros);
        offer(incumbent, e.v + e.neg_w, zeros, e.powers);
    }
    for (const std::vector<int>& candidate : warm_starts) {
        if (static_cast<int>(candidate.size()) != n) continue;
        const CornerEval& e = evaluator.eval(candidate);
        if (e.feasible) offer(incumbent, e.v + e.neg_w, candidate, e.powers);
    }

    std::priority_queue<QueuedBox, std::vector<QueuedBox>, QueueOrder> queue;
    long seq = 0;
    long iterations = 0;
    double max_pruned_ub = -kInf;

    auto consider = [&](Box box) {
        // Lower-corner feasibility: the constraint is upward-closed, so a
        // violated lower corner condemns the whole box.
        const CornerEval& lo = evaluator.eval(box.lo);
        const bool lower_g_positive = !lo.feasible || (-lo.neg_w + box.w_lo > 0.0);
        if (lower_g_positive) {
            if (audit) audit->pruned.push_back({box, SolveAudit::Reason::infeasible_lower_corner, kInf});
            return;
        }
        // Tighten w: nothing in the box can afford w above -W(r_lo).
        box.w_hi = std::min(box.w_hi, lo.neg_w);
        offer(incumbent, lo.v + lo.neg_w, box.lo, lo.powers);

        double v_ub;
        if (use_cliques) {
            // The clique bound never exceeds v(r_hi) for a separable v, so
            // the upper corner is not evaluated at all on this path; feasible
            // configurations surface through lower corners and singletons.
            const std::optional<double> tightened = v_upper_bound(box);
            if (!tightened) {
                if (audit) audit->pruned.push_back({box, SolveAudit::Reason::infeasible_lower_corner, kInf});
                return;
            }
            v_ub = *tightened;
        } else {
            const CornerEval& hi = evaluator.eval(box.hi);
            if (hi.feasible) offer(incumbent, hi.v + hi.neg_w, box.hi, hi.powers);
            v_ub = hi.v;
        }

        const double ub = v_ub + box.w_hi;
        if (ub <= prune_threshold(incumbent.value, config.epsilon)) {
            if (audit) {
                audit->pruned.push_back({box, SolveAudit::Reason::bound, ub});
            }
            max_pruned_ub = std::max(max_pruned_ub, ub);
            return;
        }
        // Lifted upper corner satisfies the constraint: the bound is attained
        // and the box closes with the corner as incumbent (already offered,
        // since -W(r_hi) >= box.w_hi implies value v + -W >= ub >= value).
        if (!use_cliques) {
            const CornerEval& hi = evaluator.eval(box.hi);
            if (hi.feasible && -hi.neg_w + box.w_hi <= 0.0) return;
        }
        if (box.lo == box.hi) return;  // single point: w resolved analytically above

        queue.push(QueuedBox{ub, seq++, std::move(box)});
    };

    {
        Box root;
        root.lo.assign(static_cast<std::size_t>(n), 0);
        root.hi.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            root.hi[static_cast<std::size_t>(i)] =
                std::min(ladder, max_solo_index(i, *ctx.gains, *ctx.table, *ctx.radio));
        root.w_lo = w_lo_global;
        root.w_hi = w_hi_global;
        consider(std::move(root));
    }

    SolveStatus status = SolveStatus::optimal;
    double cap_gap = 0.0;

    while (!queue.empty()) {
        if (iterations >= config.max_iterations) {
            status = SolveStatus::iteration_capped;
            cap_gap = std::max(0.0, queue.top().ub - incumbent.value);
            break;
        }
        ++iterations;

        QueuedBox top = queue.top();
        queue.pop();
        if (top.ub <= prune_threshold(incumbent.value, config.epsilon)) {
            max_pruned_ub = std::max(max_pruned_ub, top.ub);
            if (audit) audit->pruned.push_back({top.box, SolveAudit::Reason::bound, top.ub});
            continue;
        }

        // Split the rate coordinate with the most remaining steps; ties go to
        // the lowest link index. w is never split numerically: singleton
        // boxes resolve their w interval in consider().
        const Box& box = top.box;
        int split = -1;
        int best_span = 0;
        for (int k = 0; k < n; ++k) {
            const int span = box.hi[static_cast<std::size_t>(k)] - box.lo[static_cast<std::size_t>(k)];
            if (span > best_span) {
                best_span = span;
                split = k;
            }
        }
        const int mid = (box.lo[static_cast<std::size_t>(split)] + box.hi[static_cast<std::size_t>(split)]) / 2;

        Box left = box;
        left.hi[static_cast<std::size_t>(split)] = mid;
        Box right = box;
        right.lo[static_cast<std::size_t>(split)] = mid + 1;
        consider(std::move(left));
        consider(std::move(right));
    }

    Solution sol;
    sol.rate_indices = incumbent.indices;
    sol.rates.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        sol.rates[static_cast<std::size_t>(i)] = ctx.table->rate_at(incumbent.indices[static_cast<std::size_t>(i)]);
    sol.powers = incumbent.powers.empty() ? PowerVector(static_cast<std::size_t>(n), 0.0)
                                          : incumbent.powers;
    sol.objective = incumbent.value;
    sol.iterations = iterations;
    sol.status = status;
    sol.bound_gap = status == SolveStatus::iteration_capped
                        ? cap_gap
                        : std::max(0.0, max_pruned_ub - incumbent.value);
    if (audit) audit->final_objective = incumbent.value;
    return sol;
}

Solution brute_force(const PowerContext& ctx, const MonotoneObjective& objective) {
    const int n = ctx.n_links();
    const int ladder = ctx.table->size();

    double candidates = 1.0;
    for (int i = 0; i < n; ++i) candidates *= static_cast<double>(ladder + 1);
    if (candidates > 1e6) throw std::invalid_argument("brute_force: instance too large");

    Evaluator evaluator(ctx, objective);
    std::vector<int> indices(static_cast<std::size_t>(n), 0);
    Incumbent best;
    long examined = 0;

    while (true) {
        const CornerEval& e = evaluator.eval(indices);
        ++examined;
        if (e.feasible) {
            const double value = e.v + e.neg_w;
            if (!best.set || value > best.value) offer(best, value, indices, e.powers);
        }
        int k = n - 1;
        while (k >= 0 && indices[static_cast<std::size_t>(k)] == ladder) {
            indices[static_cast<std::size_t>(k)] = 0;
            --k;
        }
        if (k < 0) break;
        ++indices[static_cast<std::size_t>(k)];
    }

    Solution sol;
    sol.rate_indices = best.indices;
    sol.rates.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        sol.rates[static_cast<std::size_t>(i)] = ctx.table->rate_at(best.indices[static_cast<std::size_t>(i)]);
    sol.powers = best.powers.empty() ? PowerVector(static_cast<std::size_t>(n), 0.0) : best.powers;
    sol.objective = best.value;
    sol.iterations = examined;
    sol.status = SolveStatus::optimal;
    sol.bound_gap = 0.0;
    return sol;
}

MonotoneObjective static_ee_objective(double alpha, double circuit_power_mw, int /*n_links*/) {
    MonotoneObjective obj;
    obj.v = [alpha](const RateVector& rates) { return v_of(rates, alpha); };
    obj.w_cost = [circuit_power_mw](const PowerVector& powers) {
        return w_from_powers(powers, circuit_power_mw);
    };
    return obj;
}

}  // namespace greenwifi
