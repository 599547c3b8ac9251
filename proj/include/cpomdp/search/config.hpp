#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpomdp {

enum class RolloutPolicy { Random, Problem, Hold };

// Tree-shaping and widening parameters shared by the three Simulate variants.
struct SearchConfig {
    std::size_t iterations = 10000;  // n
    int max_depth = 20;              // d_max
    double k_action = 10.0;          // k_a
    double alpha_action = 1.0;       // alpha_a
    double k_obs = 5.0;              // k_o
    double alpha_obs = 0.1;          // alpha_o
    double exploration = 90.0;       // kappa; the UCB coefficient
    double nu = 0.01;                // closeness band for the stochastic policy
    std::size_t pf_width = 30;       // m, particles per in-tree belief step
    bool min_cost_backup = false;    // propagate minimal cost across action nodes
    RolloutPolicy rollout = RolloutPolicy::Random;

    void validate() const {
        if (iterations < 1) throw std::invalid_argument("search: iterations must be >= 1");
        if (max_depth < 1) throw std::invalid_argument("search: max_depth must be >= 1");
        if (k_action <= 0.0) throw std::invalid_argument("search: k_action must be > 0");
        if (k_obs <= 0.0) throw std::invalid_argument("search: k_obs must be > 0");
        if (alpha_action < 0.0 || alpha_action > 1.0)
            throw std::invalid_argument("search: alpha_action must be in [0,1]");
        if (alpha_obs < 0.0 || alpha_obs > 1.0)
            throw std::invalid_argument("search: alpha_obs must be in [0,1]");
        if (exploration < 0.0) throw std::invalid_argument("search: exploration must be >= 0");
        if (nu < 0.0) throw std::invalid_argument("search: nu must be >= 0");
        if (pf_width < 1) throw std::invalid_argument("search: pf_width must be >= 1");
    }
};

// Dual-ascent settings. `enabled = false` pins lambda at zero, which is how
// the unconstrained planner ids are realized over the same search code.
struct DualConfig {
    std::vector<double> lambda0;  // empty = zeros; single entry broadcasts
    double a_step = 1.0;
    double b_step = 100.0;
    bool enabled = true;
    bool rolling_budget = true;

    void validate() const {
        if (a_step <= 0.0) throw std::invalid_argument("dual: a_step must be > 0");
        if (b_step <= 0.0) throw std::invalid_argument("dual: b_step must be > 0");
        for (double v : lambda0)
            if (v < 0.0) throw std::invalid_argument("dual: lambda0 entries must be >= 0");
    }
};

}  // namespace cpomdp
