#pragma once

#include <functional>

#include "cpomdp/search/rollout.hpp"
#include "cpomdp/search/tree.hpp"

namespace cpomdp {

// Observation-widening tree search with weighted particle insertion at
// observation nodes (Simulate of the POMCPOW family). Revisited observation
// branches resample the landing state from B(hao) proportional to W(hao) and
// recompute the step reward and costs for the resampled transition.
template <CpomdpModel M>
class CpomcpowSearch {
public:
    using State = typename M::State;
    using Action = typename M::Action;

    CpomcpowSearch(const M& model, const SearchConfig& cfg) : model_(model), cfg_(cfg) {}

    void reset(const ParticleBelief<State>&) {
        tree_.reset(model_.n_costs());
        zero_weight_events_ = 0;
    }

    void run_iteration(const ParticleBelief<State>& belief, const CostVec& lambda,
                       const CostVec& budget, Rng& rng) {
        State s = belief.sample(rng);
        simulate(s, 0, cfg_.max_depth, lambda, budget, rng);
    }

    Returns simulate(const State& s, int node_id, int depth, const CostVec& lambda,
                     const CostVec& budget, Rng& rng) {
        if (depth == 0 || model_.is_terminal(s)) return Returns::zero(model_.n_costs());

        const int edge_id =
            detail::action_prog_widen(model_, tree_, tree_.histories[node_id], cfg_, lambda,
                                      budget, node_id, rng, scratch_, policy_);
        const Action a = tree_.edges[edge_id].action;

        auto outcome = model_.step(s, a, rng);
        double r = outcome.reward;
        CostVec c = outcome.costs;

        int oc_id;
        bool created = false;
        {
            auto& edge = tree_.edges[edge_id];
            if (detail::widening_allows(edge.obs_children.size(), cfg_.k_obs, cfg_.alpha_obs,
                                        edge.n)) {
                oc_id = tree_.find_obs_child(edge_id, outcome.observation);
                if (oc_id < 0) {
                    oc_id = tree_.add_obs_child(edge_id, outcome.observation);
                    created = true;
                }
            } else {
                oc_id = select_obs_child(edge_id, rng);
            }
        }
        {
            auto& edge = tree_.edges[edge_id];
            auto& oc = tree_.obs[oc_id];
            oc.m += 1;
            edge.m_total += 1;
            const double w = model_.obs_density(oc.obs, s, a, outcome.next_state);
            oc.states.push_back(outcome.next_state);
            oc.weights.push_back(w);
            oc.weight_total += w;
        }

        Returns sub;
        if (created) {
            sub = rollout_from_state(model_, outcome.next_state, depth - 1, cfg_, rng);
        } else {
            const auto& oc = tree_.obs[oc_id];
            std::size_t pick;
            if (oc.weight_total > 0.0) {
                pick = rng.categorical({oc.weights.data(), oc.weights.size()}, oc.weight_total);
            } else {
                pick = rng.uniform_below(oc.states.size());
                ++zero_weight_events_;
            }
            const State sp = oc.states[pick];
            r = model_.reward(s, a, sp);
            c = model_.costs(s, a, sp);
            const int next_node = oc.history;
            sub = simulate(sp, next_node, depth - 1, lambda, budget, rng);
        }

        const double gamma = model_.discount();
        const double v = r + gamma * sub.value;
        CostVec cost_return = c + gamma * sub.costs;

        auto& node = tree_.histories[node_id];
        auto& edge = tree_.edges[edge_id];
        node.n += 1;
        edge.n += 1;
        edge.q += (v - edge.q) / static_cast<double>(edge.n);
        edge.q_cost.mean_update(cost_return, static_cast<double>(edge.n));
        edge.c_bar.mean_update(c, static_cast<double>(edge.n));
        if (backup_hook) backup_hook(edge_id, v, cost_return);
        if (cfg_.min_cost_backup)
            cost_return = minimal_cost_return(node.children, tree_.edges, lambda);
        return {v, cost_return};
    }

    const PowTree<M>& tree() const { return tree_; }
    int root_visits() const { return tree_.histories[0].n; }
    std::size_t depletion_events() const { return 0; }
    std::size_t zero_weight_events() const { return zero_weight_events_; }

    void collect_root(std::vector<ChildStat>& stats, std::vector<Action>& actions) const {
        stats.clear();
        actions.clear();
        for (int id : tree_.histories[0].children) {
            const auto& e = tree_.edges[id];
            stats.push_back(ChildStat{e.n, e.q, e.q_cost});
            actions.push_back(e.action);
        }
    }

    CostVec root_c_bar(std::size_t child) const {
        return tree_.edges[tree_.histories[0].children[child]].c_bar;
    }

    // Test hook: observe every (edge, V, C) backup.
    std::function<void(int, double, const CostVec&)> backup_hook;

private:
    int select_obs_child(int edge_id, Rng& rng) {
        const auto& edge = tree_.edges[edge_id];
        double u = rng.uniform() * static_cast<double>(edge.m_total);
        int chosen = edge.obs_children.back();
        for (int id : edge.obs_children) {
            u -= static_cast<double>(tree_.obs[id].m);
            if (u <= 0.0) {
                chosen = id;
                break;
            }
        }
        return chosen;
    }

    const M& model_;
    SearchConfig cfg_;
    PowTree<M> tree_;
    std::vector<ChildStat> scratch_;
    ActionPolicy policy_;
    std::size_t zero_weight_events_ = 0;
};

}  // namespace cpomdp
