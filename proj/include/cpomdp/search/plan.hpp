#pragma once

#include <stdexcept>
#include <vector>

#include "cpomdp/core/particle_belief.hpp"
#include "cpomdp/dual/lambda.hpp"
#include "cpomdp/dual/policy.hpp"
#include "cpomdp/search/config.hpp"

namespace cpomdp {

template <class Action>
struct RootActionRow {
    Action action;
    int n = 0;
    double q = 0.0;
    CostVec q_cost;
    CostVec c_bar;
    double q_lambda = 0.0;
};

template <class Action>
struct PlanDiagnostics {
    CostVec final_lambda;
    std::size_t iterations = 0;
    int root_visits = 0;
    std::vector<RootActionRow<Action>> root_actions;
    std::size_t depletion_events = 0;
    std::size_t zero_weight_events = 0;
};

template <class Action>
struct PlanResult {
    Action action;
    ActionPolicy policy;  // indices into diag.root_actions
    PlanDiagnostics<Action> diag;
};

// Plan: interleave one Simulate per iteration with a projected dual update
// on lambda from the greedily chosen root action's cost value, then return
// the nu-close stochastic policy and an action sampled from it. When the
// dual is disabled (unconstrained planner ids) lambda stays pinned at zero;
// the greedy draw still happens every iteration so both modes consume the
// rng stream identically.
template <class Search, CpomdpModel M>
PlanResult<typename M::Action> plan(Search& search, const M& model,
                                    const ParticleBelief<typename M::State>& belief,
                                    const SearchConfig& cfg, const DualConfig& dual,
                                    const CostVec& budget, Rng& rng) {
    using Action = typename M::Action;
    cfg.validate();
    dual.validate();
    if (belief.size() == 0) throw std::invalid_argument("plan: empty belief");

    const std::size_t n_costs = model.n_costs();
    LambdaState lambda(n_costs, dual);

    search.reset(belief);
    std::vector<ChildStat> stats;
    std::vector<Action> actions;
    ActionPolicy policy;

    for (std::size_t i = 1; i <= cfg.iterations; ++i) {
        search.run_iteration(belief, lambda.value(), budget, rng);
        search.collect_root(stats, actions);
        if (stats.empty()) continue;  // root sample was terminal; nothing to update
        greedy_policy(policy, stats, search.root_visits(), lambda.value(), 0.0, 0.0, budget);
        const std::size_t pick = policy.sample(rng);
        if (dual.enabled && n_costs > 0)
            lambda.update(stats[pick].q_cost, budget);
        else
            lambda.advance_without_update();
    }

    search.collect_root(stats, actions);
    if (stats.empty()) throw std::runtime_error("plan: search produced no root actions");

    PlanResult<Action> result;
    greedy_policy(result.policy, stats, search.root_visits(), lambda.value(), 0.0, cfg.nu,
                  budget);
    result.action = actions[result.policy.sample(rng)];

    auto& diag = result.diag;
    diag.final_lambda = lambda.value();
    diag.iterations = cfg.iterations;
    diag.root_visits = search.root_visits();
    diag.depletion_events = search.depletion_events();
    diag.zero_weight_events = search.zero_weight_events();
    diag.root_actions.reserve(stats.size());
    for (std::size_t i = 0; i < stats.size(); ++i) {
        RootActionRow<Action> row;
        row.action = actions[i];
        row.n = stats[i].n;
        row.q = stats[i].q;
        row.q_cost = stats[i].q_cost;
        row.c_bar = search.root_c_bar(i);
        row.q_lambda = detail::lagrangian_score(stats[i], lambda.value(), 0.0, 1);
        diag.root_actions.push_back(std::move(row));
    }
    return result;
}

}  // namespace cpomdp
