#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "cpomdp/core/cost_vector.hpp"
#include "cpomdp/core/rng.hpp"
#include "cpomdp/dual/lp.hpp"

namespace cpomdp {

// Per-action statistics as seen from a parent node.
struct ChildStat {
    int n = 0;
    double q = 0.0;
    CostVec q_cost;
};

// Distribution over the child indices it was built from.
struct ActionPolicy {
    std::vector<std::size_t> support;
    std::vector<double> probs;

    void clear() {
        support.clear();
        probs.clear();
    }

    void set_point_mass(std::size_t index) {
        clear();
        support.push_back(index);
        probs.push_back(1.0);
    }

    // One rng draw regardless of support size.
    std::size_t sample(Rng& rng) const {
        std::size_t i = rng.categorical({probs.data(), probs.size()}, 1.0);
        return support[i];
    }

    std::size_t mode() const {
        std::size_t best = 0;
        for (std::size_t i = 1; i < probs.size(); ++i)
            if (probs[i] > probs[best]) best = i;
        return support[best];
    }
};

namespace detail {

inline double lagrangian_score(const ChildStat& cs, const CostVec& lambda, double kappa,
                               int parent_visits) {
    if (cs.n == 0) return std::numeric_limits<double>::infinity();
    double score = cs.q - lambda.dot(cs.q_cost);
    if (kappa > 0.0) {
        const double logn = std::log(static_cast<double>(std::max(parent_visits, 1)));
        score += kappa * std::sqrt(logn / static_cast<double>(cs.n));
    }
    return score;
}

}  // namespace detail

// Stochastic policy over the nu-close action set. Feasible case: the LP picks
// mixing weights over the close set maximizing Lagrangian value subject to
// the expected cost staying within budget. Infeasible case: point mass on the
// action minimizing lambda-weighted cost, ties to higher score then index.
inline void stochastic_policy(ActionPolicy& out, std::span<const double> q_lambda,
                              std::span<const ChildStat> children, double nu,
                              const CostVec& budget, const CostVec& lambda) {
    out.clear();
    const std::size_t n = q_lambda.size();
    if (n == 0) throw std::logic_error("stochastic_policy: no actions");
    constexpr double kInf = std::numeric_limits<double>::infinity();

    double best = -kInf;
    for (double v : q_lambda) best = std::max(best, v);

    if (best == kInf) {
        // Unvisited actions force exploration: uniform over them.
        for (std::size_t i = 0; i < n; ++i)
            if (q_lambda[i] == kInf) out.support.push_back(i);
        out.probs.assign(out.support.size(), 1.0 / static_cast<double>(out.support.size()));
        return;
    }

    std::vector<std::size_t> close;
    for (std::size_t i = 0; i < n; ++i)
        if (q_lambda[i] >= best - nu) close.push_back(i);

    std::size_t arg_best = close[0];
    for (std::size_t i : close)
        if (q_lambda[i] > q_lambda[arg_best]) arg_best = i;

    const std::size_t k = budget.size();
    // Point mass whenever the close set is trivial or the best action is
    // feasible on its own; the LP could not do better than that vertex.
    if (close.size() == 1 || k == 0 || children[arg_best].q_cost.all_leq(budget)) {
        out.set_point_mass(arg_best);
        return;
    }

    std::vector<std::vector<double>> A(k + 2, std::vector<double>(close.size()));
    std::vector<double> b(k + 2);
    std::vector<double> c(close.size());
    for (std::size_t j = 0; j < close.size(); ++j) {
        c[j] = q_lambda[close[j]];
        for (std::size_t i = 0; i < k; ++i) A[i][j] = children[close[j]].q_cost[i];
        A[k][j] = 1.0;
        A[k + 1][j] = -1.0;
    }
    for (std::size_t i = 0; i < k; ++i) b[i] = budget[i];
    b[k] = 1.0;
    b[k + 1] = -1.0;

    auto lp = SimplexLp::solve(A, b, c);
    if (lp.status == SimplexLp::Status::Optimal) {
        double total = 0.0;
        for (std::size_t j = 0; j < close.size(); ++j) {
            if (lp.x[j] > 1e-12) {
                out.support.push_back(close[j]);
                out.probs.push_back(lp.x[j]);
                total += lp.x[j];
            }
        }
        if (!out.support.empty()) {
            for (double& p : out.probs) p /= total;
            return;
        }
    }

    // No mix over the close set satisfies the budget.
    std::size_t fallback = close[0];
    double fallback_cost = lambda.dot(children[fallback].q_cost);
    for (std::size_t i : close) {
        const double cost_i = lambda.dot(children[i].q_cost);
        if (cost_i < fallback_cost - 1e-15 ||
            (std::fabs(cost_i - fallback_cost) <= 1e-15 && q_lambda[i] > q_lambda[fallback])) {
            fallback = i;
            fallback_cost = cost_i;
        }
    }
    out.set_point_mass(fallback);
}

// GreedyPolicy: Lagrangian action values with a UCB bonus, then the
// stochastic policy over the nu-close set.
inline void greedy_policy(ActionPolicy& out, std::span<const ChildStat> children,
                          int parent_visits, const CostVec& lambda, double kappa, double nu,
                          const CostVec& budget) {
    if (children.empty()) throw std::logic_error("greedy_policy: node has no child actions");
    std::vector<double> q_lambda(children.size());
    for (std::size_t i = 0; i < children.size(); ++i)
        q_lambda[i] = detail::lagrangian_score(children[i], lambda, kappa, parent_visits);
    stochastic_policy(out, q_lambda, children, nu, budget, lambda);
}

inline ActionPolicy greedy_policy(std::span<const ChildStat> children, int parent_visits,
                                  const CostVec& lambda, double kappa, double nu,
                                  const CostVec& budget) {
    ActionPolicy policy;
    greedy_policy(policy, children, parent_visits, lambda, kappa, nu, budget);
    return policy;
}

}  // namespace cpomdp
