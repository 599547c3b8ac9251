#pragma once

#include "cpomdp/core/model.hpp"
#include "cpomdp/core/particle_belief.hpp"
#include "cpomdp/core/types.hpp"
#include "cpomdp/search/config.hpp"

namespace cpomdp {

// Default rollout: simulate the configured policy to the depth limit (or a
// terminal state), accumulating discounted reward and costs.
template <CpomdpModel M>
Returns rollout_from_state(const M& model, typename M::State s, int depth,
                           const SearchConfig& cfg, Rng& rng) {
    Returns out = Returns::zero(model.n_costs());
    double disc = 1.0;
    const double gamma = model.discount();
    const auto pick_action = [&](const typename M::State& state) -> typename M::Action {
        if constexpr (HasHoldRolloutPolicy<M>) {
            if (cfg.rollout == RolloutPolicy::Hold) return model.hold_rollout_action(state, rng);
        }
        if constexpr (HasRolloutPolicy<M>) {
            if (cfg.rollout == RolloutPolicy::Problem) return model.rollout_action(state, rng);
        }
        return sample_uniform_action(model, rng);
    };
    for (int d = depth; d > 0; --d) {
        if (model.is_terminal(s)) break;
        typename M::Action a = pick_action(s);
        auto outcome = model.step(s, a, rng);
        out.value += disc * outcome.reward;
        out.costs += disc * outcome.costs;
        disc *= gamma;
        s = std::move(outcome.next_state);
    }
    return out;
}

// Belief rollouts run on a single state drawn from the belief; simulating
// the whole particle set would cost m times more per step.
template <CpomdpModel M>
Returns rollout_from_belief(const M& model, const ParticleBelief<typename M::State>& belief,
                            int depth, const SearchConfig& cfg, Rng& rng) {
    return rollout_from_state(model, belief.sample(rng), depth, cfg, rng);
}

}  // namespace cpomdp
