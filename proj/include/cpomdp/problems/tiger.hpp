#pragma once

#include <string>
#include <vector>

#include "cpomdp/core/model.hpp"

namespace cpomdp {

// Two-state discrete CPOMDP used as a planner sanity oracle: a hidden
// hazard, a noisy listen action billed against the cost budget, and a
// terminal commit action whose payoff depends on the hazard. Small enough
// that the constrained optimum is computable by exhaustive enumeration of
// depth-limited policy trees.
struct TigerConfig {
    double gamma = 0.95;
    double budget = 2.3;
    double p_hazard = 0.5;        // prior probability the hazard is present
    double p_accurate = 0.7;      // listen accuracy
    double listen_reward = 0.0;
    double listen_cost = 1.0;
    double go_safe_reward = 10.0;
    double go_hazard_reward = -12.0;
};

class TigerModel {
public:
    struct State {
        bool hazard = false;
        bool done = false;
    };
    enum Act : int { Listen = 0, Go = 1 };
    using Action = int;
    using Observation = int;  // 0 = reads clear, 1 = reads hazard

    explicit TigerModel(TigerConfig cfg = {}) : cfg_(cfg) { actions_ = {Listen, Go}; }

    const TigerConfig& config() const { return cfg_; }
    double discount() const { return cfg_.gamma; }
    std::size_t n_costs() const { return 1; }
    CostVec cost_budget() const { return CostVec{cfg_.budget}; }
    const std::vector<Action>& actions() const { return actions_; }

    bool is_terminal(const State& s) const { return s.done; }

    State sample_initial(Rng& rng) const {
        return State{rng.uniform() < cfg_.p_hazard, false};
    }

    GenerativeOutcome<State, Observation> step(const State& s, Action a, Rng& rng) const {
        GenerativeOutcome<State, Observation> out;
        State next = s;
        if (a == Go) {
            next.done = true;
            out.observation = 0;
        } else {
            const bool accurate = rng.uniform() < cfg_.p_accurate;
            const bool reads_hazard = accurate ? s.hazard : !s.hazard;
            out.observation = reads_hazard ? 1 : 0;
        }
        out.reward = reward(s, a, next);
        out.costs = costs(s, a, next);
        out.next_state = next;
        return out;
    }

    double reward(const State& s, Action a, const State&) const {
        if (a == Go) return s.hazard ? cfg_.go_hazard_reward : cfg_.go_safe_reward;
        return cfg_.listen_reward;
    }

    CostVec costs(const State&, Action a, const State&) const {
        return CostVec{a == Listen ? cfg_.listen_cost : 0.0};
    }

    double obs_density(Observation o, const State& s, Action a, const State&) const {
        if (a == Go) return o == 0 ? 1.0 : 0.0;
        const double p_reads_hazard = s.hazard ? cfg_.p_accurate : 1.0 - cfg_.p_accurate;
        return o == 1 ? p_reads_hazard : 1.0 - p_reads_hazard;
    }

    std::string format_action(Action a) const { return a == Listen ? "listen" : "go"; }

private:
    TigerConfig cfg_;
    std::vector<Action> actions_;
};

}  // namespace cpomdp
