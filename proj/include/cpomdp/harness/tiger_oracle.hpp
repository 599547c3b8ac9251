#pragma once

#include <limits>
#include <vector>

#include "cpomdp/harness/experiments.hpp"
#include "cpomdp/problems/tiger.hpp"

namespace cpomdp {

// Exhaustive constrained optimum for the two-state oracle problem: every
// depth-limited deterministic policy tree is evaluated exactly on the belief
// MDP (26 trees at depth 3), and the best reward subject to the cost budget
// is kept. This is independent of the tree-search code paths it sanity-checks.
struct TigerOracleSolution {
    int constrained_action = -1;
    double constrained_reward = 0.0;
    double constrained_cost = 0.0;
    int unconstrained_action = -1;
    double unconstrained_reward = 0.0;
    double unconstrained_cost = 0.0;
};

namespace detail {

struct TigerPolicyEval {
    double reward = 0.0;
    double cost = 0.0;
    int root_action = -1;
};

inline std::vector<TigerPolicyEval> enumerate_tiger_policies(const TigerConfig& cfg,
                                                             double p_hazard, int depth) {
    if (depth == 0) return {TigerPolicyEval{}};
    std::vector<TigerPolicyEval> out;

    TigerPolicyEval go;
    go.reward = (1.0 - p_hazard) * cfg.go_safe_reward + p_hazard * cfg.go_hazard_reward;
    go.root_action = TigerModel::Go;
    out.push_back(go);

    const double p_reads_hazard =
        p_hazard * cfg.p_accurate + (1.0 - p_hazard) * (1.0 - cfg.p_accurate);
    const double post_hazard = p_reads_hazard > 0.0
                                   ? p_hazard * cfg.p_accurate / p_reads_hazard
                                   : 0.0;
    const double p_reads_clear = 1.0 - p_reads_hazard;
    const double post_clear = p_reads_clear > 0.0
                                  ? p_hazard * (1.0 - cfg.p_accurate) / p_reads_clear
                                  : 0.0;

    const auto on_clear = enumerate_tiger_policies(cfg, post_clear, depth - 1);
    const auto on_hazard = enumerate_tiger_policies(cfg, post_hazard, depth - 1);
    for (const auto& c0 : on_clear) {
        for (const auto& c1 : on_hazard) {
            TigerPolicyEval e;
            e.root_action = TigerModel::Listen;
            e.reward = cfg.listen_reward +
                       cfg.gamma * (p_reads_clear * c0.reward + p_reads_hazard * c1.reward);
            e.cost = cfg.listen_cost +
                     cfg.gamma * (p_reads_clear * c0.cost + p_reads_hazard * c1.cost);
            out.push_back(e);
        }
    }
    return out;
}

}  // namespace detail

inline TigerOracleSolution solve_tiger_oracle(const TigerConfig& cfg, int depth) {
    const auto evals = detail::enumerate_tiger_policies(cfg, cfg.p_hazard, depth);
    TigerOracleSolution sol;
    double best_feasible = -std::numeric_limits<double>::infinity();
    double best_any = -std::numeric_limits<double>::infinity();
    for (const auto& e : evals) {
        if (e.reward > best_any) {
            best_any = e.reward;
            sol.unconstrained_action = e.root_action;
            sol.unconstrained_reward = e.reward;
            sol.unconstrained_cost = e.cost;
        }
        if (e.cost <= cfg.budget + 1e-12 && e.reward > best_feasible) {
            best_feasible = e.reward;
            sol.constrained_action = e.root_action;
            sol.constrained_reward = e.reward;
            sol.constrained_cost = e.cost;
        }
    }
    return sol;
}

struct OracleMatchResult {
    PlannerId planner;
    std::size_t searches = 0;
    std::size_t matches = 0;
    double match_rate() const {
        return searches ? static_cast<double>(matches) / static_cast<double>(searches) : 0.0;
    }
};

// Repeated seeded root searches; counts how often the planner's chosen root
// action equals the enumerated constrained optimum.
inline OracleMatchResult run_tiger_oracle_check(const TigerModel& model, PlannerId planner,
                                                const SearchConfig& scfg, const DualConfig& dual,
                                                const HarnessConfig& hcfg,
                                                std::size_t n_searches, std::uint64_t base_seed,
                                                std::size_t jobs) {
    const auto oracle = solve_tiger_oracle(model.config(), scfg.max_depth);
    OracleMatchResult result;
    result.planner = planner;
    result.searches = n_searches;
    std::vector<char> matched(n_searches, 0);
    DualConfig dcfg = dual;
    dcfg.enabled = is_constrained(planner);

    parallel_for(n_searches, jobs, [&](std::size_t i) {
        Rng rng(derive_seed(base_seed, i, seed_family_tag(planner)));
        auto belief = initial_belief(model, hcfg.belief_particles, rng);
        CostVec budget = model.cost_budget();
        if (!dcfg.enabled) budget = CostVec(budget.size(), 1e18);
        int action = -1;
        switch (family_of(planner)) {
            case SearchFamily::Dpw: {
                CpomcpDpwSearch<TigerModel> search(model, scfg);
                action = plan(search, model, belief, scfg, dcfg, budget, rng).action;
                break;
            }
            case SearchFamily::Pow: {
                CpomcpowSearch<TigerModel> search(model, scfg);
                action = plan(search, model, belief, scfg, dcfg, budget, rng).action;
                break;
            }
            case SearchFamily::Pft: {
                CpftDpwSearch<TigerModel> search(model, scfg);
                action = plan(search, model, belief, scfg, dcfg, budget, rng).action;
                break;
            }
        }
        matched[i] = (action == oracle.constrained_action) ? 1 : 0;
    });
    for (char m : matched) result.matches += m;
    return result;
}

}  // namespace cpomdp
