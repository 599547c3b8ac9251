#pragma once

#include <string>

#include "cpomdp/core/model.hpp"

namespace cpomdp {

// Wraps a CPOMDP as an unconstrained problem with reward r - lambda' c and
// zero cost dimensions. Dynamics, observations, and action spaces are shared
// with the base model, so beliefs and environment traces stay comparable.
template <CpomdpModel M>
class ScalarizedModel {
public:
    using State = typename M::State;
    using Action = typename M::Action;
    using Observation = typename M::Observation;

    ScalarizedModel(const M& base, CostVec lambda) : base_(&base), lambda_(lambda) {
        if (lambda.size() != base.n_costs())
            throw std::invalid_argument("scalarize: weight length does not match cost count");
        for (double v : lambda)
            if (v < 0.0) throw std::invalid_argument("scalarize: weights must be >= 0");
    }

    const M& base() const { return *base_; }
    double discount() const { return base_->discount(); }
    std::size_t n_costs() const { return 0; }
    CostVec cost_budget() const { return CostVec(0); }

    bool is_terminal(const State& s) const { return base_->is_terminal(s); }
    State sample_initial(Rng& rng) const { return base_->sample_initial(rng); }

    GenerativeOutcome<State, Observation> step(const State& s, const Action& a, Rng& rng) const {
        auto out = base_->step(s, a, rng);
        out.reward -= lambda_.dot(out.costs);
        out.costs = CostVec(0);
        return out;
    }

    double reward(const State& s, const Action& a, const State& next) const {
        return base_->reward(s, a, next) - lambda_.dot(base_->costs(s, a, next));
    }

    CostVec costs(const State&, const Action&, const State&) const { return CostVec(0); }

    double obs_density(const Observation& o, const State& s, const Action& a,
                       const State& next) const {
        return base_->obs_density(o, s, a, next);
    }

    const std::vector<Action>& actions() const
        requires FiniteActionModel<M>
    {
        return base_->actions();
    }

    Action sample_action(Rng& rng) const
        requires SampledActionModel<M>
    {
        return base_->sample_action(rng);
    }

    Action rollout_action(const State& s, Rng& rng) const
        requires HasRolloutPolicy<M>
    {
        return base_->rollout_action(s, rng);
    }

    std::string format_action(const Action& a) const { return format_action_of(*base_, a); }

private:
    static std::string format_action_of(const M& m, const Action& a) {
        return cpomdp::format_action(m, a);
    }

    const M* base_;
    CostVec lambda_;
};

}  // namespace cpomdp
