#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cpomdp/harness/episode.hpp"
#include "cpomdp/harness/parallel.hpp"
#include "cpomdp/problems/scalarized.hpp"

namespace cpomdp {

struct AggregateStats {
    double mean = 0.0;
    double sem = 0.0;
    std::size_t count = 0;

    static AggregateStats of(std::span<const double> xs) {
        AggregateStats s;
        s.count = xs.size();
        if (xs.empty()) return s;
        double sum = 0.0;
        for (double x : xs) sum += x;
        s.mean = sum / static_cast<double>(xs.size());
        if (xs.size() > 1) {
            double ss = 0.0;
            for (double x : xs) ss += (x - s.mean) * (x - s.mean);
            const double var = ss / static_cast<double>(xs.size() - 1);
            s.sem = std::sqrt(var / static_cast<double>(xs.size()));
        }
        return s;
    }
};

struct PlannerBatch {
    PlannerId planner;
    AggregateStats reward;
    std::vector<AggregateStats> costs;  // per environment cost dimension
    double mean_steps = 0.0;
    double mean_wall_ms = 0.0;
    std::vector<EpisodeResult> episodes;
};

namespace detail {

inline void finalize_batch(PlannerBatch& batch, std::size_t n_costs) {
    std::vector<double> rewards;
    rewards.reserve(batch.episodes.size());
    for (const auto& e : batch.episodes) rewards.push_back(e.reward_return);
    batch.reward = AggregateStats::of(rewards);
    batch.costs.clear();
    for (std::size_t k = 0; k < n_costs; ++k) {
        std::vector<double> ck;
        ck.reserve(batch.episodes.size());
        for (const auto& e : batch.episodes) ck.push_back(e.cost_return[k]);
        batch.costs.push_back(AggregateStats::of(ck));
    }
    double steps = 0.0, wall = 0.0;
    for (const auto& e : batch.episodes) {
        steps += e.steps;
        wall += e.wall_ms_per_step;
    }
    if (!batch.episodes.empty()) {
        batch.mean_steps = steps / static_cast<double>(batch.episodes.size());
        batch.mean_wall_ms = wall / static_cast<double>(batch.episodes.size());
    }
}

}  // namespace detail

// Runs n_episodes of one planner, episodes in parallel, aggregation keyed by
// episode index so the result is schedule-independent.
template <CpomdpModel PM, CpomdpModel EM>
PlannerBatch run_planner_batch(PlannerId planner, const PM& plan_model, const EM& eval_model,
                               const SearchConfig& scfg, const DualConfig& dual,
                               const HarnessConfig& hcfg, std::size_t n_episodes,
                               std::uint64_t base_seed, std::size_t jobs) {
    PlannerBatch batch;
    batch.planner = planner;
    batch.episodes.resize(n_episodes);
    parallel_for(n_episodes, jobs, [&](std::size_t i) {
        const std::uint64_t seed = episode_seed(base_seed, i, planner);
        batch.episodes[i] =
            run_episode(planner, plan_model, eval_model, scfg, dual, hcfg, seed);
    });
    detail::finalize_batch(batch, eval_model.n_costs());
    return batch;
}

// Table-1 style grid: every planner on a common seed sequence.
template <CpomdpModel M>
std::vector<PlannerBatch> run_comparison(const M& model, const std::vector<PlannerId>& planners,
                                         const SearchConfig& scfg, const DualConfig& dual,
                                         const HarnessConfig& hcfg, std::size_t n_episodes,
                                         std::uint64_t base_seed, std::size_t jobs) {
    if (n_episodes < 1) throw std::invalid_argument("run_comparison: n_episodes must be >= 1");
    std::vector<PlannerBatch> out;
    out.reserve(planners.size());
    for (PlannerId planner : planners)
        out.push_back(run_planner_batch(planner, model, model, scfg, dual, hcfg, n_episodes,
                                        base_seed, jobs));
    return out;
}

struct SweepPoint {
    double lambda = 0.0;   // scalarization weight; negative marks the constrained run
    bool constrained = false;
    PlannerBatch batch;    // reward/cost statistics are the true, unscalarized returns
};

// Fig-1 style sweep: the unconstrained planner on scalarized models across a
// weight grid, plus the constrained planner on the true problem, all on the
// same seed sequence.
template <CpomdpModel M>
std::vector<SweepPoint> run_pareto_sweep(const M& model, const std::vector<double>& lambda_grid,
                                         const SearchConfig& scfg, const DualConfig& dual,
                                         const HarnessConfig& hcfg, std::size_t n_episodes,
                                         std::uint64_t base_seed, std::size_t jobs) {
    if (lambda_grid.empty()) throw std::invalid_argument("pareto: empty lambda grid");
    std::vector<SweepPoint> points;
    points.reserve(lambda_grid.size() + 1);
    for (double lam : lambda_grid) {
        SweepPoint p;
        p.lambda = lam;
        ScalarizedModel<M> wrapped(model, CostVec(model.n_costs(), lam));
        p.batch = run_planner_batch(PlannerId::Pomcpow, wrapped, model, scfg, dual, hcfg,
                                    n_episodes, base_seed, jobs);
        points.push_back(std::move(p));
    }
    SweepPoint c;
    c.constrained = true;
    c.batch = run_planner_batch(PlannerId::Cpomcpow, model, model, scfg, dual, hcfg, n_episodes,
                                base_seed, jobs);
    points.push_back(std::move(c));
    return points;
}

enum class CostPropMode { Normal, Min, Unconstrained };

inline std::string_view costprop_mode_name(CostPropMode m) {
    switch (m) {
        case CostPropMode::Normal: return "normal";
        case CostPropMode::Min: return "min";
        case CostPropMode::Unconstrained: return "unconstrained";
    }
    return "?";
}

template <class Action>
struct AblationActionStats {
    Action action;
    AggregateStats visit_fraction;
    AggregateStats q_cost;
    AggregateStats q_lambda_gap;
};

template <class Action>
struct AblationSearchDump {
    std::size_t search_index = 0;
    CostVec final_lambda;
    int root_visits = 0;
    std::vector<RootActionRow<Action>> rows;
};

template <class Action>
struct AblationRow {
    CostPropMode mode;
    std::vector<AblationActionStats<Action>> per_action;
    std::string modal_action;
    std::vector<AblationSearchDump<Action>> dumps;
};

// Repeated root searches from the initial belief, no environment stepping.
// Reports the per-root-action visit share, cost value, and Lagrangian gap,
// plus the modal chosen action across searches.
template <CpomdpModel M>
AblationRow<typename M::Action> run_costprop_mode(
    const M& model, CostPropMode mode, const std::vector<typename M::Action>& focus,
    SearchConfig scfg, const DualConfig& dual, const HarnessConfig& hcfg,
    std::size_t n_searches, std::uint64_t base_seed, std::size_t jobs) {
    using Action = typename M::Action;
    if (n_searches < 1) throw std::invalid_argument("ablation: n_searches must be >= 1");

    scfg.min_cost_backup = (mode == CostPropMode::Min);
    const PlannerId planner =
        (mode == CostPropMode::Unconstrained) ? PlannerId::Pomcpow : PlannerId::Cpomcpow;
    DualConfig dcfg = dual;
    dcfg.enabled = is_constrained(planner);

    struct SearchOutput {
        std::vector<double> visit_frac, qc, gap;  // aligned with `focus`
        std::string chosen;
        AblationSearchDump<Action> dump;
    };
    std::vector<SearchOutput> outputs(n_searches);

    parallel_for(n_searches, jobs, [&](std::size_t i) {
        Rng rng(derive_seed(base_seed, i, costprop_mode_name(mode)));
        auto belief = initial_belief(model, hcfg.belief_particles, rng);
        CostVec budget = model.cost_budget();
        if (!dcfg.enabled) budget = CostVec(budget.size(), 1e18);

        CpomcpowSearch<M> search(model, scfg);
        auto planned = plan(search, model, belief, scfg, dcfg, budget, rng);

        auto& out = outputs[i];
        out.chosen = format_action(model, planned.action);
        out.dump.search_index = i;
        out.dump.final_lambda = planned.diag.final_lambda;
        out.dump.root_visits = planned.diag.root_visits;
        out.dump.rows = planned.diag.root_actions;

        double best_ql = -std::numeric_limits<double>::infinity();
        for (const auto& row : planned.diag.root_actions)
            best_ql = std::max(best_ql, row.q_lambda);
        for (const Action& a : focus) {
            double frac = 0.0, qc = 0.0, gap = 0.0;
            for (const auto& row : planned.diag.root_actions) {
                if (!(row.action == a)) continue;
                frac = planned.diag.root_visits > 0
                           ? static_cast<double>(row.n) / planned.diag.root_visits
                           : 0.0;
                qc = row.q_cost.size() > 0 ? row.q_cost[0] : 0.0;
                gap = row.q_lambda - best_ql;
                break;
            }
            out.visit_frac.push_back(frac);
            out.qc.push_back(qc);
            out.gap.push_back(gap);
        }
    });

    AblationRow<Action> row;
    row.mode = mode;
    for (std::size_t f = 0; f < focus.size(); ++f) {
        std::vector<double> fr, qc, gap;
        for (const auto& o : outputs) {
            fr.push_back(o.visit_frac[f]);
            qc.push_back(o.qc[f]);
            gap.push_back(o.gap[f]);
        }
        row.per_action.push_back({focus[f], AggregateStats::of(fr), AggregateStats::of(qc),
                                  AggregateStats::of(gap)});
    }
    std::map<std::string, int> counts;
    for (const auto& o : outputs) counts[o.chosen] += 1;
    int best = -1;
    for (const auto& [name, count] : counts)
        if (count > best) {
            best = count;
            row.modal_action = name;
        }
    row.dumps.reserve(n_searches);
    for (auto& o : outputs) row.dumps.push_back(std::move(o.dump));
    return row;
}

template <CpomdpModel M>
std::vector<AblationRow<typename M::Action>> run_costprop_ablation(
    const M& model, const std::vector<typename M::Action>& focus, const SearchConfig& scfg,
    const DualConfig& dual, const HarnessConfig& hcfg, std::size_t n_searches,
    std::uint64_t base_seed, std::size_t jobs) {
    std::vector<AblationRow<typename M::Action>> rows;
    for (CostPropMode mode :
         {CostPropMode::Normal, CostPropMode::Min, CostPropMode::Unconstrained})
        rows.push_back(run_costprop_mode(model, mode, focus, scfg, dual, hcfg, n_searches,
                                         base_seed, jobs));
    return rows;
}

}  // namespace cpomdp
