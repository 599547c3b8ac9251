#pragma once

#include <cstddef>
#include <stdexcept>

#include "cpomdp/core/cost_vector.hpp"
#include "cpomdp/search/config.hpp"

namespace cpomdp {

// Projected dual-ascent state: lambda >= 0 componentwise at all times.
class LambdaState {
public:
    LambdaState(std::size_t n_costs, const DualConfig& cfg) : lambda_(n_costs), cfg_(cfg) {
        if (cfg.lambda0.size() > 1 && cfg.lambda0.size() != n_costs)
            throw std::invalid_argument("dual: lambda0 length does not match the cost count");
        for (std::size_t i = 0; i < n_costs; ++i) {
            if (cfg.lambda0.size() == 1)
                lambda_[i] = cfg.lambda0[0];
            else if (!cfg.lambda0.empty())
                lambda_[i] = cfg.lambda0[i];
        }
    }

    double step_size(std::size_t i) const {
        if (i < 1) throw std::invalid_argument("step_size: iteration index starts at 1");
        return cfg_.a_step / (cfg_.b_step + static_cast<double>(i));
    }

    // lambda <- [lambda + alpha_i (Q_C - budget)]+
    void update(const CostVec& q_cost, const CostVec& budget) {
        ++iteration_;
        const double alpha = step_size(iteration_);
        lambda_ += alpha * (q_cost - budget);
        lambda_.clamp_nonnegative();
    }

    void advance_without_update() { ++iteration_; }

    const CostVec& value() const { return lambda_; }
    std::size_t iteration() const { return iteration_; }

private:
    CostVec lambda_;
    DualConfig cfg_;
    std::size_t iteration_ = 0;
};

// Receding-horizon budget bookkeeping between environment steps:
// budget' = max(0, (budget - incurred) / gamma).
inline CostVec update_budget(const CostVec& budget, const CostVec& incurred, double gamma) {
    if (gamma <= 0.0 || gamma >= 1.0)
        throw std::invalid_argument("update_budget: gamma must be in (0,1)");
    CostVec next = (budget - incurred) * (1.0 / gamma);
    next.clamp_nonnegative();
    return next;
}

}  // namespace cpomdp
