#pragma once

#include <chrono>
#include <cstdint>
#include <type_traits>
#include <vector>

#include "cpomdp/core/model.hpp"
#include "cpomdp/core/particle_belief.hpp"
#include "cpomdp/dual/lambda.hpp"
#include "cpomdp/harness/planner_id.hpp"
#include "cpomdp/search/dpw_search.hpp"
#include "cpomdp/search/pft_search.hpp"
#include "cpomdp/search/plan.hpp"
#include "cpomdp/search/pow_search.hpp"

namespace cpomdp {

struct HarnessConfig {
    std::size_t belief_particles = 10000;
    int max_steps = 100;

    void validate() const {
        if (belief_particles < 1)
            throw std::invalid_argument("harness: belief_particles must be >= 1");
        if (max_steps < 1) throw std::invalid_argument("harness: max_steps must be >= 1");
    }
};

struct StepRecord {
    double reward = 0.0;
    CostVec costs;
};

struct EpisodeResult {
    double reward_return = 0.0;
    CostVec cost_return;
    int steps = 0;
    std::uint64_t seed = 0;
    std::size_t depletion_events = 0;
    double wall_ms_per_step = 0.0;
    std::vector<StepRecord> step_log;
};

namespace detail {
struct NullStepSink {
    template <class... Args>
    void operator()(Args&&...) const {}
};
}  // namespace detail

// Receding-horizon episode: plan from the current belief, execute the
// sampled action in the environment, update the external bootstrap filter,
// and optionally roll the cost budget forward. The planning model and the
// environment model may differ (scalarized planning on the true problem);
// returns are always accounted under the environment model.
template <class Search, CpomdpModel PM, CpomdpModel EM, class StepSink = detail::NullStepSink>
EpisodeResult run_episode_with(const PM& plan_model, const EM& eval_model,
                               const SearchConfig& scfg, const DualConfig& dual,
                               const HarnessConfig& hcfg, std::uint64_t seed,
                               StepSink&& sink = {}) {
    static_assert(std::is_same_v<typename PM::State, typename EM::State>);
    static_assert(std::is_same_v<typename PM::Action, typename EM::Action>);
    static_assert(std::is_same_v<typename PM::Observation, typename EM::Observation>);
    hcfg.validate();

    Rng rng(seed);
    EpisodeResult result;
    result.seed = seed;
    result.cost_return = CostVec(eval_model.n_costs());

    auto belief = initial_belief(plan_model, hcfg.belief_particles, rng);
    auto state = eval_model.sample_initial(rng);

    CostVec budget = plan_model.cost_budget();
    if (!dual.enabled && budget.size() > 0) {
        // Unconstrained planner ids ignore the budget entirely.
        budget = CostVec(budget.size(), 1e18);
    }

    Search search(plan_model, scfg);
    const double gamma = eval_model.discount();
    double disc = 1.0;
    double wall_ms = 0.0;

    for (int t = 0; t < hcfg.max_steps; ++t) {
        const auto t0 = std::chrono::steady_clock::now();
        auto planned = plan(search, plan_model, belief, scfg, dual, budget, rng);
        const auto t1 = std::chrono::steady_clock::now();
        wall_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();

        auto outcome = generative_step(eval_model, state, planned.action, rng);
        result.reward_return += disc * outcome.reward;
        result.cost_return += disc * outcome.costs;
        result.step_log.push_back({outcome.reward, outcome.costs});
        result.depletion_events += planned.diag.depletion_events;
        result.steps += 1;
        sink(t, planned, outcome);

        if (eval_model.is_terminal(outcome.next_state)) break;

        auto update = bootstrap_update(plan_model, belief, planned.action, outcome.observation,
                                       rng);
        belief = std::move(update.belief);
        if (update.depleted) ++result.depletion_events;

        if (dual.rolling_budget && dual.enabled && budget.size() == outcome.costs.size() &&
            budget.size() > 0)
            budget = update_budget(budget, outcome.costs, gamma);

        disc *= gamma;
        state = std::move(outcome.next_state);
    }

    result.wall_ms_per_step = result.steps > 0 ? wall_ms / result.steps : 0.0;
    return result;
}

template <CpomdpModel PM, CpomdpModel EM, class StepSink = detail::NullStepSink>
EpisodeResult run_episode(PlannerId planner, const PM& plan_model, const EM& eval_model,
                          const SearchConfig& scfg, DualConfig dual, const HarnessConfig& hcfg,
                          std::uint64_t seed, StepSink&& sink = {}) {
    dual.enabled = is_constrained(planner);
    switch (family_of(planner)) {
        case SearchFamily::Dpw:
            return run_episode_with<CpomcpDpwSearch<PM>>(plan_model, eval_model, scfg, dual,
                                                         hcfg, seed,
                                                         std::forward<StepSink>(sink));
        case SearchFamily::Pow:
            return run_episode_with<CpomcpowSearch<PM>>(plan_model, eval_model, scfg, dual,
                                                        hcfg, seed,
                                                        std::forward<StepSink>(sink));
        case SearchFamily::Pft:
            return run_episode_with<CpftDpwSearch<PM>>(plan_model, eval_model, scfg, dual,
                                                       hcfg, seed, std::forward<StepSink>(sink));
    }
    throw std::logic_error("unknown planner family");
}

// Episode seed derivation: hash(base_seed, episode index, planner family).
inline std::uint64_t episode_seed(std::uint64_t base_seed, std::size_t episode,
                                  PlannerId planner) {
    return derive_seed(base_seed, episode, seed_family_tag(planner));
}

}  // namespace cpomdp
