#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "cpomdp/core/model.hpp"

namespace cpomdp {

// Constrained LightDark on the line. The agent moves in discrete steps and
// must stop (action 0) inside the goal interval; observation noise shrinks
// toward the light location. Entering the region above the cliff costs 1
// per step against a small discounted budget.
struct LightDarkConfig {
    double gamma = 0.95;
    double budget = 0.1;
    double goal_lo = -1.0;
    double goal_hi = 1.0;
    double light_loc = 10.0;
    double cliff = 12.0;
    double step_reward = -1.0;
    double goal_reward = 100.0;
    double wrong_stop_reward = -100.0;
    double cliff_cost = 1.0;
    double sigma_min = 0.5;
    double init_mean = 2.0;
    double init_std = 2.0;
};

class LightDarkModel {
public:
    struct State {
        double pos = 0.0;
        bool done = false;
    };
    using Action = int;  // one of {0, +-1, +-5, +-10}; 0 terminates
    using Observation = double;

    explicit LightDarkModel(LightDarkConfig cfg = {}) : cfg_(cfg) {
        actions_ = {0, 1, -1, 5, -5, 10, -10};
    }

    const LightDarkConfig& config() const { return cfg_; }
    double discount() const { return cfg_.gamma; }
    std::size_t n_costs() const { return 1; }
    CostVec cost_budget() const { return CostVec{cfg_.budget}; }
    const std::vector<Action>& actions() const { return actions_; }

    bool is_terminal(const State& s) const { return s.done; }

    double sigma(double pos) const { return std::fabs(pos - cfg_.light_loc) + cfg_.sigma_min; }

    State sample_initial(Rng& rng) const {
        return State{rng.normal(cfg_.init_mean, cfg_.init_std), false};
    }

    // Shortest-path rollout on the underlying state: stop inside the goal,
    // otherwise take the step that lands closest to the goal center.
    Action rollout_action(const State& s, Rng&) const {
        if (s.pos >= cfg_.goal_lo && s.pos <= cfg_.goal_hi) return 0;
        const double center = 0.5 * (cfg_.goal_lo + cfg_.goal_hi);
        Action best = actions_[1];
        double best_dist = std::numeric_limits<double>::infinity();
        for (Action a : actions_) {
            if (a == 0) continue;
            const double d = std::fabs(s.pos + a - center);
            if (d < best_dist) {
                best_dist = d;
                best = a;
            }
        }
        return best;
    }

    // Hold-pattern rollout: drift with unit steps and never commit. Leaf
    // values then sit near the step-cost baseline for every state, so stop
    // and localization values are learned in the tree rather than guessed
    // by a rollout that can see the exact state. Used by the search-
    // statistics experiments.
    Action hold_rollout_action(const State&, Rng& rng) const {
        return rng.uniform() < 0.5 ? 1 : -1;
    }

    GenerativeOutcome<State, Observation> step(const State& s, Action a, Rng& rng) const {
        State next = transition(s, a);
        GenerativeOutcome<State, Observation> out;
        out.observation = rng.normal(next.pos, sigma(next.pos));
        out.reward = reward(s, a, next);
        out.costs = costs(s, a, next);
        out.next_state = next;
        return out;
    }

    State transition(const State& s, Action a) const {
        if (a == 0) return State{s.pos, true};
        return State{s.pos + static_cast<double>(a), false};
    }

    double reward(const State& s, Action a, const State&) const {
        if (a == 0)
            return (s.pos >= cfg_.goal_lo && s.pos <= cfg_.goal_hi) ? cfg_.goal_reward
                                                                    : cfg_.wrong_stop_reward;
        return cfg_.step_reward;
    }

    // Cost attaches to the destination; stopping charges the current spot.
    CostVec costs(const State&, Action, const State& next) const {
        return CostVec{next.pos > cfg_.cliff ? cfg_.cliff_cost : 0.0};
    }

    double obs_density(Observation o, const State&, Action, const State& next) const {
        return gaussian_pdf(o, next.pos, sigma(next.pos));
    }

    std::string format_action(Action a) const { return std::to_string(a); }

private:
    LightDarkConfig cfg_;
    std::vector<Action> actions_;
};

}  // namespace cpomdp
