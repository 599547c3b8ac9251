#pragma once

#include "cpomdp/core/cost_vector.hpp"

namespace cpomdp {

// One sample from the joint transition/observation/reward/cost distribution.
template <class State, class Observation>
struct GenerativeOutcome {
    State next_state;
    Observation observation;
    double reward = 0.0;
    CostVec costs;
};

// Discounted reward and cost returns of a (partial) trajectory.
struct Returns {
    double value = 0.0;
    CostVec costs;

    static Returns zero(std::size_t n_costs) { return {0.0, CostVec(n_costs)}; }
};

}  // namespace cpomdp
