#include <gtest/gtest.h>

#include <cmath>

#include "cpomdp/dual/lambda.hpp"
#include "cpomdp/dual/lp.hpp"
#include "cpomdp/dual/policy.hpp"

namespace cpomdp {
namespace {

DualConfig dual_with(double a, double b, std::vector<double> lambda0 = {}) {
    DualConfig cfg;
    cfg.a_step = a;
    cfg.b_step = b;
    cfg.lambda0 = std::move(lambda0);
    return cfg;
}

TEST(StepSize, HarmonicSchedule) {
    LambdaState lam(1, dual_with(1.0, 100.0));
    EXPECT_NEAR(lam.step_size(1), 1.0 / 101.0, 1e-15);
    double prev = lam.step_size(1);
    for (std::size_t i = 2; i < 50; ++i) {
        EXPECT_LT(lam.step_size(i), prev);
        prev = lam.step_size(i);
    }
}

TEST(LambdaState, AscentArithmetic) {
    // alpha fixed at 0.1 via a/b = 1/9 with i=1 -> 1/(9+1).
    LambdaState lam(1, dual_with(1.0, 9.0, {0.5}));
    lam.update(CostVec{0.3}, CostVec{0.1});
    EXPECT_NEAR(lam.value()[0], 0.52, 1e-12);
}

TEST(LambdaState, ProjectionAtZero) {
    LambdaState lam(1, dual_with(1.0, 9.0, {0.005}));
    lam.update(CostVec{0.0}, CostVec{0.1});
    EXPECT_DOUBLE_EQ(lam.value()[0], 0.0);
}

TEST(LambdaState, HugeBudgetKeepsLambdaZero) {
    LambdaState lam(1, dual_with(1.0, 100.0));
    for (int i = 0; i < 200; ++i) lam.update(CostVec{5.0}, CostVec{1e9});
    EXPECT_DOUBLE_EQ(lam.value()[0], 0.0);
}

TEST(LambdaState, NonnegativeUnderRandomUpdates) {
    Rng rng(21);
    LambdaState lam(3, dual_with(2.0, 10.0));
    for (int i = 0; i < 100000; ++i) {
        CostVec qc{rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)};
        CostVec budget{rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0)};
        lam.update(qc, budget);
        for (std::size_t k = 0; k < 3; ++k) ASSERT_GE(lam.value()[k], 0.0);
    }
}

TEST(UpdateBudget, RecedingHorizonArithmetic) {
    auto next = update_budget(CostVec{0.1}, CostVec{0.0}, 0.95);
    EXPECT_NEAR(next[0], 0.1 / 0.95, 1e-12);
    next = update_budget(CostVec{0.1}, CostVec{0.1}, 0.95);
    EXPECT_DOUBLE_EQ(next[0], 0.0);
    next = update_budget(CostVec{0.1}, CostVec{1.0}, 0.95);
    EXPECT_DOUBLE_EQ(next[0], 0.0);
}

// --- greedy policy ------------------------------------------------------

std::vector<ChildStat> three_children() {
    return {ChildStat{10, 10.0, CostVec{3.0}}, ChildStat{10, 8.0, CostVec{0.0}},
            ChildStat{10, 6.0, CostVec{0.1}}};
}

TEST(GreedyPolicy, LagrangianArithmetic) {
    auto children = three_children();
    ActionPolicy pol;
    // Q - lambda' Qc with kappa = 0: [10-6, 8, 6-0.2] -> argmax = action 1.
    greedy_policy(pol, children, 30, CostVec{2.0}, 0.0, 0.0, CostVec{1e9});
    ASSERT_EQ(pol.support.size(), 1u);
    EXPECT_EQ(pol.support[0], 1u);
}

TEST(GreedyPolicy, ZeroLambdaMatchesRewardRanking) {
    auto children = three_children();
    ActionPolicy pol;
    greedy_policy(pol, children, 30, CostVec{0.0}, 0.0, 0.0, CostVec{1e9});
    ASSERT_EQ(pol.support.size(), 1u);
    EXPECT_EQ(pol.support[0], 0u);
}

TEST(GreedyPolicy, ArgmaxShiftInvariant) {
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<ChildStat> children;
        const int n = 2 + static_cast<int>(rng.uniform_below(6));
        for (int i = 0; i < n; ++i)
            children.push_back({5, rng.uniform(-10.0, 10.0), CostVec{rng.uniform(0.0, 2.0)}});
        const CostVec lambda{rng.uniform(0.0, 3.0)};
        ActionPolicy a, b;
        greedy_policy(a, children, 50, lambda, 0.0, 0.0, CostVec{1e9});
        for (auto& c : children) c.q += 123.456;
        greedy_policy(b, children, 50, lambda, 0.0, 0.0, CostVec{1e9});
        ASSERT_EQ(a.support, b.support);
    }
}

TEST(GreedyPolicy, UnvisitedChildrenForceExploration) {
    std::vector<ChildStat> children = {ChildStat{3, 50.0, CostVec{0.0}},
                                       ChildStat{0, 0.0, CostVec{0.0}},
                                       ChildStat{0, 0.0, CostVec{0.0}}};
    ActionPolicy pol;
    greedy_policy(pol, children, 3, CostVec{0.0}, 1.0, 0.0, CostVec{1e9});
    ASSERT_EQ(pol.support.size(), 2u);
    EXPECT_EQ(pol.support[0], 1u);
    EXPECT_EQ(pol.support[1], 2u);
    EXPECT_NEAR(pol.probs[0], 0.5, 1e-12);
}

// --- stochastic policy ---------------------------------------------------

TEST(StochasticPolicy, SingleCloseActionIsPointMass) {
    std::vector<double> ql = {5.0, 1.0, 0.0};
    std::vector<ChildStat> children = {{1, 5.0, CostVec{9.0}},
                                       {1, 1.0, CostVec{0.0}},
                                       {1, 0.0, CostVec{0.0}}};
    ActionPolicy pol;
    stochastic_policy(pol, ql, children, 0.5, CostVec{10.0}, CostVec{1.0});
    ASSERT_EQ(pol.support.size(), 1u);
    EXPECT_EQ(pol.support[0], 0u);
    EXPECT_DOUBLE_EQ(pol.probs[0], 1.0);
}

TEST(StochasticPolicy, AllFeasibleGivesArgmaxPointMass) {
    std::vector<double> ql = {4.0, 4.005, 3.995};
    std::vector<ChildStat> children = {{1, 0.0, CostVec{0.05}},
                                       {1, 0.0, CostVec{0.08}},
                                       {1, 0.0, CostVec{0.01}}};
    ActionPolicy pol;
    stochastic_policy(pol, ql, children, 0.02, CostVec{0.1}, CostVec{1.0});
    ASSERT_EQ(pol.support.size(), 1u);
    EXPECT_EQ(pol.support[0], 1u);
}

TEST(StochasticPolicy, BindingConstraintMixesTwoActions) {
    // Two close actions, costs {0.0, 0.2}, budget 0.1: the LP caps the
    // better action at probability 0.5 and fills with the safe one.
    std::vector<double> ql = {1.0, 1.1};
    std::vector<ChildStat> children = {{1, 1.0, CostVec{0.0}}, {1, 1.1, CostVec{0.2}}};
    ActionPolicy pol;
    stochastic_policy(pol, ql, children, 0.5, CostVec{0.1}, CostVec{1.0});
    ASSERT_EQ(pol.support.size(), 2u);
    double p_costly = 0.0, expected_cost = 0.0, expected_obj = 0.0;
    for (std::size_t i = 0; i < pol.support.size(); ++i) {
        expected_cost += pol.probs[i] * children[pol.support[i]].q_cost[0];
        expected_obj += pol.probs[i] * ql[pol.support[i]];
        if (pol.support[i] == 1) p_costly = pol.probs[i];
    }
    EXPECT_NEAR(p_costly, 0.5, 1e-9);
    EXPECT_LE(expected_cost, 0.1 + 1e-9);
    EXPECT_NEAR(expected_obj, 1.05, 1e-9);
}

TEST(StochasticPolicy, InfeasibleFallsBackToMinCost) {
    std::vector<double> ql = {2.0, 2.01};
    std::vector<ChildStat> children = {{1, 2.0, CostVec{0.6}}, {1, 2.01, CostVec{0.9}}};
    ActionPolicy pol;
    stochastic_policy(pol, ql, children, 0.5, CostVec{0.1}, CostVec{1.0});
    ASSERT_EQ(pol.support.size(), 1u);
    EXPECT_EQ(pol.support[0], 0u);  // lower lambda-weighted cost
}

TEST(StochasticPolicy, RandomTablesKeepSimplexAndSupportInvariants) {
    Rng rng(41);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t n = 1 + rng.uniform_below(8);
        const std::size_t k = rng.uniform_below(3);
        std::vector<double> ql(n);
        std::vector<ChildStat> children(n);
        for (std::size_t i = 0; i < n; ++i) {
            ql[i] = rng.uniform(-50.0, 50.0);
            children[i].n = 1;
            children[i].q = ql[i];
            children[i].q_cost = CostVec(k);
            for (std::size_t j = 0; j < k; ++j) children[i].q_cost[j] = rng.uniform(0.0, 2.0);
        }
        CostVec budget(k), lambda(k);
        for (std::size_t j = 0; j < k; ++j) {
            budget[j] = rng.uniform(0.0, 1.5);
            lambda[j] = rng.uniform(0.0, 4.0);
        }
        const double nu = rng.uniform(0.0, 5.0);
        ActionPolicy pol;
        stochastic_policy(pol, ql, children, nu, budget, lambda);

        ASSERT_FALSE(pol.support.empty());
        double total = 0.0;
        double best = -1e300;
        for (double v : ql) best = std::max(best, v);
        for (std::size_t i = 0; i < pol.support.size(); ++i) {
            ASSERT_GE(pol.probs[i], 0.0);
            total += pol.probs[i];
            ASSERT_GE(ql[pol.support[i]], best - nu - 1e-9) << "support outside nu-close set";
        }
        ASSERT_NEAR(total, 1.0, 1e-9);

        // Fallback property: expected lambda-cost never exceeds the
        // lambda-cost of the cheapest close action.
        if (k > 0) {
            double min_close_cost = 1e300;
            for (std::size_t i = 0; i < n; ++i)
                if (ql[i] >= best - nu) min_close_cost = std::min(min_close_cost, lambda.dot(children[i].q_cost));
            bool any_feasible_mix = false;
            for (std::size_t i = 0; i < n; ++i)
                if (ql[i] >= best - nu && children[i].q_cost.all_leq(budget)) any_feasible_mix = true;
            if (!any_feasible_mix) {
                double pol_cost = 0.0;
                for (std::size_t i = 0; i < pol.support.size(); ++i)
                    pol_cost += pol.probs[i] * lambda.dot(children[pol.support[i]].q_cost);
                // Either the LP found a feasible mix, or the fallback matched
                // the cheapest close action.
                double mix_cost = 0.0;
                bool lp_mix = pol.support.size() > 1;
                for (std::size_t i = 0; i < pol.support.size(); ++i)
                    mix_cost += pol.probs[i] * lambda.dot(children[pol.support[i]].q_cost);
                if (!lp_mix) ASSERT_LE(pol_cost, min_close_cost + 1e-9);
                (void)mix_cost;
            }
        }
    }
}

TEST(PolicySample, ConsumesOneDrawAndMatchesProbs) {
    ActionPolicy pol;
    pol.support = {2, 5};
    pol.probs = {0.25, 0.75};
    Rng rng(55);
    int c5 = 0;
    for (int i = 0; i < 20000; ++i)
        if (pol.sample(rng) == 5) ++c5;
    EXPECT_NEAR(c5 / 20000.0, 0.75, 0.01);
}

// --- LP solver -----------------------------------------------------------

TEST(SimplexLp, SolvesBoxProblem) {
    // max x + y st x <= 1, y <= 2
    auto res = SimplexLp::solve({{1, 0}, {0, 1}}, {1, 2}, {1, 1});
    ASSERT_EQ(res.status, SimplexLp::Status::Optimal);
    EXPECT_NEAR(res.objective, 3.0, 1e-9);
    EXPECT_NEAR(res.x[0], 1.0, 1e-9);
    EXPECT_NEAR(res.x[1], 2.0, 1e-9);
}

TEST(SimplexLp, DetectsInfeasible) {
    // x <= 1 and -x <= -2  (x >= 2)
    auto res = SimplexLp::solve({{1}, {-1}}, {1, -2}, {1});
    EXPECT_EQ(res.status, SimplexLp::Status::Infeasible);
}

TEST(SimplexLp, EqualityViaTwoRows) {
    // max 2x + y st x + y = 1 (two inequalities), x,y >= 0
    auto res = SimplexLp::solve({{1, 1}, {-1, -1}}, {1, -1}, {2, 1});
    ASSERT_EQ(res.status, SimplexLp::Status::Optimal);
    EXPECT_NEAR(res.objective, 2.0, 1e-9);
    EXPECT_NEAR(res.x[0], 1.0, 1e-9);
}

// Dual-route check: the general simplex against the closed-form two-action
// mix for K = 1 budget problems.
TEST(SimplexLp, MatchesClosedFormTwoActionMix) {
    Rng rng(61);
    for (int trial = 0; trial < 2000; ++trial) {
        const double q0 = rng.uniform(-5.0, 5.0), q1 = rng.uniform(-5.0, 5.0);
        const double c0 = rng.uniform(0.0, 1.0), c1 = rng.uniform(0.0, 1.0);
        const double budget = rng.uniform(0.0, 1.2);
        auto res = SimplexLp::solve({{c0, c1}, {1, 1}, {-1, -1}}, {budget, 1.0, -1.0},
                                    {q0, q1});
        // Closed form: sort by objective; cap the better action by budget.
        double best;
        const bool f0 = c0 <= budget, f1 = c1 <= budget;
        if (!f0 && !f1) {
            if (std::min(c0, c1) > budget) {
                EXPECT_EQ(res.status, SimplexLp::Status::Infeasible);
                continue;
            }
        }
        ASSERT_EQ(res.status, SimplexLp::Status::Optimal);
        const double hi_q = std::max(q0, q1), lo_q = std::min(q0, q1);
        const double hi_c = q0 >= q1 ? c0 : c1, lo_c = q0 >= q1 ? c1 : c0;
        if (hi_c <= budget) {
            best = hi_q;
        } else if (lo_c <= budget) {
            // mix p*hi + (1-p)*lo with p*hi_c + (1-p)*lo_c = budget
            const double p = (budget - lo_c) / (hi_c - lo_c);
            best = p * hi_q + (1.0 - p) * lo_q;
        } else {
            continue;  // infeasible handled above
        }
        EXPECT_NEAR(res.objective, best, 1e-7);
    }
}

}  // namespace
}  // namespace cpomdp
