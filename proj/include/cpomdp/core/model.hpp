#pragma once

#include <concepts>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpomdp/core/cost_vector.hpp"
#include "cpomdp/core/rng.hpp"
#include "cpomdp/core/types.hpp"

namespace cpomdp {

template <class M>
using OutcomeOf = GenerativeOutcome<typename M::State, typename M::Observation>;

// Generative CPOMDP interface: black-box step G(s,a) -> (s', o, r, c),
// explicit observation density Z, and (s, a, s') reward/cost functions for
// in-tree recomputation. Models are immutable after construction.
template <class M>
concept CpomdpModel = requires(const M& m, const typename M::State& s,
                               const typename M::Action& a, const typename M::Observation& o,
                               Rng& rng) {
    typename M::State;
    typename M::Action;
    typename M::Observation;
    { m.discount() } -> std::convertible_to<double>;
    { m.n_costs() } -> std::convertible_to<std::size_t>;
    { m.cost_budget() } -> std::convertible_to<CostVec>;
    { m.step(s, a, rng) } -> std::convertible_to<OutcomeOf<M>>;
    { m.obs_density(o, s, a, s) } -> std::convertible_to<double>;
    { m.reward(s, a, s) } -> std::convertible_to<double>;
    { m.costs(s, a, s) } -> std::convertible_to<CostVec>;
    { m.is_terminal(s) } -> std::convertible_to<bool>;
    { m.sample_initial(rng) } -> std::convertible_to<typename M::State>;
};

// Discrete action sets are enumerable; continuous ones expose a sampler.
template <class M>
concept FiniteActionModel = requires(const M& m) {
    { m.actions() } -> std::convertible_to<std::vector<typename M::Action>>;
};

template <class M>
concept SampledActionModel = requires(const M& m, Rng& rng) {
    { m.sample_action(rng) } -> std::convertible_to<typename M::Action>;
};

// Optional problem-specific rollout policies.
template <class M>
concept HasRolloutPolicy = requires(const M& m, const typename M::State& s, Rng& rng) {
    { m.rollout_action(s, rng) } -> std::convertible_to<typename M::Action>;
};

template <class M>
concept HasHoldRolloutPolicy = requires(const M& m, const typename M::State& s, Rng& rng) {
    { m.hold_rollout_action(s, rng) } -> std::convertible_to<typename M::Action>;
};

template <class M>
concept HasActionFormatter = requires(const M& m, const typename M::Action& a) {
    { m.format_action(a) } -> std::convertible_to<std::string>;
};

// G(s, a). Terminal input states indicate a harness bug upstream.
template <CpomdpModel M>
OutcomeOf<M> generative_step(const M& model, const typename M::State& s,
                             const typename M::Action& a, Rng& rng) {
    if (model.is_terminal(s)) throw std::logic_error("generative_step: terminal state");
    return model.step(s, a, rng);
}

template <CpomdpModel M>
typename M::Action sample_uniform_action(const M& model, Rng& rng) {
    if constexpr (FiniteActionModel<M>) {
        const auto& acts = model.actions();
        return acts[rng.uniform_below(acts.size())];
    } else {
        static_assert(SampledActionModel<M>, "model must enumerate or sample actions");
        return model.sample_action(rng);
    }
}

template <CpomdpModel M>
std::string format_action(const M& model, const typename M::Action& a) {
    if constexpr (HasActionFormatter<M>) {
        return model.format_action(a);
    } else {
        return std::to_string(a);
    }
}

}  // namespace cpomdp
