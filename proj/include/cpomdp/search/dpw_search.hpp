#pragma once

#include <functional>

#include "cpomdp/search/rollout.hpp"
#include "cpomdp/search/tree.hpp"

namespace cpomdp {

// Double progressive widening without weighted particle insertion: the
// baseline Simulate. Observation nodes store bare state lists, revisits pick
// uniformly, so a continuous observation space gives single-particle nodes
// and the search degenerates toward assuming the next state is known.
template <CpomdpModel M>
class CpomcpDpwSearch {
public:
    using State = typename M::State;
    using Action = typename M::Action;

    CpomcpDpwSearch(const M& model, const SearchConfig& cfg) : model_(model), cfg_(cfg) {}

    void reset(const ParticleBelief<State>&) { tree_.reset(model_.n_costs()); }

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

        int oc_id;
        bool is_new = false;
        State sp;
        double r;
        CostVec c;
        if (detail::widening_allows(tree_.edges[edge_id].obs_children.size(), cfg_.k_obs,
                                    cfg_.alpha_obs, tree_.edges[edge_id].n)) {
            auto outcome = model_.step(s, a, rng);
            oc_id = tree_.find_obs_child(edge_id, outcome.observation);
            if (oc_id < 0) oc_id = tree_.add_obs_child(edge_id, outcome.observation);
            auto& oc = tree_.obs[oc_id];
            oc.m += 1;
            tree_.edges[edge_id].m_total += 1;
            oc.states.push_back(outcome.next_state);
            is_new = (oc.m == 1);
            sp = std::move(outcome.next_state);
            r = outcome.reward;
            c = std::move(outcome.costs);
        } else {
            oc_id = select_obs_child(edge_id, rng);
            const auto& oc = tree_.obs[oc_id];
            sp = oc.states[rng.uniform_below(oc.states.size())];
            r = model_.reward(s, a, sp);
            c = model_.costs(s, a, sp);
        }

        Returns sub;
        if (is_new) {
            sub = rollout_from_state(model_, sp, depth - 1, cfg_, rng);
        } else {
            const int next_node = tree_.obs[oc_id].history;
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
    std::size_t zero_weight_events() const { return 0; }

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
};

}  // namespace cpomdp
