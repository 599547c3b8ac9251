#pragma once

#include <functional>

#include "cpomdp/search/rollout.hpp"
#include "cpomdp/search/tree.hpp"

namespace cpomdp {

// Belief-tree Simulate over particle-filter beliefs: observation-side
// widening stores (b', r, c) triples produced by the generative PF update,
// non-widening visits pick one of the stored triples uniformly.
template <CpomdpModel M>
class CpftDpwSearch {
public:
    using State = typename M::State;
    using Action = typename M::Action;

    CpftDpwSearch(const M& model, const SearchConfig& cfg) : model_(model), cfg_(cfg) {}

    void reset(const ParticleBelief<State>& belief) {
        tree_.reset(model_, belief, model_.n_costs());
        depletion_events_ = 0;
    }

    void run_iteration(const ParticleBelief<State>&, const CostVec& lambda,
                       const CostVec& budget, Rng& rng) {
        simulate(0, cfg_.max_depth, lambda, budget, rng);
    }

    Returns simulate(int node_id, int depth, const CostVec& lambda, const CostVec& budget,
                     Rng& rng) {
        if (depth == 0 || tree_.nodes[node_id].terminal)
            return Returns::zero(model_.n_costs());

        const int edge_id =
            detail::action_prog_widen(model_, tree_, tree_.nodes[node_id], cfg_, lambda,
                                      budget, node_id, rng, scratch_, policy_);

        double r;
        CostVec c;
        int child_node;
        bool is_new = false;
        if (detail::widening_allows(tree_.edges[edge_id].outcomes.size(), cfg_.k_obs,
                                    cfg_.alpha_obs, tree_.edges[edge_id].n)) {
            auto pf = pf_step(model_, tree_.nodes[node_id].belief, tree_.edges[edge_id].action,
                              cfg_.pf_width, rng);
            if (pf.depleted) ++depletion_events_;
            r = pf.reward;
            c = pf.costs;
            child_node = tree_.add_node(model_, std::move(pf.belief));
            tree_.edges[edge_id].outcomes.push_back({child_node, r, c});
            is_new = true;
        } else {
            const auto& edge = tree_.edges[edge_id];
            const auto& pick = edge.outcomes[rng.uniform_below(edge.outcomes.size())];
            r = pick.reward;
            c = pick.costs;
            child_node = pick.node;
        }

        Returns sub;
        if (is_new) {
            sub = rollout_from_belief(model_, tree_.nodes[child_node].belief, depth - 1, cfg_,
                                      rng);
        } else {
            sub = simulate(child_node, depth - 1, lambda, budget, rng);
        }

        const double gamma = model_.discount();
        const double v = r + gamma * sub.value;
        CostVec cost_return = c + gamma * sub.costs;

        auto& node = tree_.nodes[node_id];
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

    const PftTree<M>& tree() const { return tree_; }
    int root_visits() const { return tree_.nodes[0].n; }
    std::size_t depletion_events() const { return depletion_events_; }
    std::size_t zero_weight_events() const { return 0; }

    void collect_root(std::vector<ChildStat>& stats, std::vector<Action>& actions) const {
        stats.clear();
        actions.clear();
        for (int id : tree_.nodes[0].children) {
            const auto& e = tree_.edges[id];
            stats.push_back(ChildStat{e.n, e.q, e.q_cost});
            actions.push_back(e.action);
        }
    }

    CostVec root_c_bar(std::size_t child) const {
        return tree_.edges[tree_.nodes[0].children[child]].c_bar;
    }

    std::function<void(int, double, const CostVec&)> backup_hook;

private:
    const M& model_;
    SearchConfig cfg_;
    PftTree<M> tree_;
    std::vector<ChildStat> scratch_;
    ActionPolicy policy_;
    std::size_t depletion_events_ = 0;
};

}  // namespace cpomdp
