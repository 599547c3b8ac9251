#pragma once

#include <cmath>
#include <vector>

#include "cpomdp/core/cost_vector.hpp"
#include "cpomdp/core/model.hpp"
#include "cpomdp/core/particle_belief.hpp"
#include "cpomdp/dual/policy.hpp"
#include "cpomdp/search/config.hpp"

namespace cpomdp {

// Index-based arenas, rebuilt per Plan call. Nodes are referenced by id;
// arenas only grow, so ids stay valid for the lifetime of a search.

template <CpomdpModel M>
struct PowTree {
    using State = typename M::State;
    using Action = typename M::Action;
    using Obs = typename M::Observation;

    struct History {
        int n = 0;
        std::vector<int> children;    // action edge ids
        std::vector<Action> untried;  // finite action sets: shuffled once
        bool untried_ready = false;
    };

    struct ActionEdge {
        Action action;
        int n = 0;
        double q = 0.0;
        CostVec q_cost;
        CostVec c_bar;
        std::vector<int> obs_children;
        long long m_total = 0;  // sum of M over observation children
    };

    struct ObsChild {
        Obs obs;
        long long m = 0;                // insertion count M(hao)
        std::vector<State> states;      // B(hao)
        std::vector<double> weights;    // W(hao); unused by the unweighted variant
        double weight_total = 0.0;
        int history = -1;
    };

    std::vector<History> histories;
    std::vector<ActionEdge> edges;
    std::vector<ObsChild> obs;

    void reset(std::size_t n_costs) {
        histories.clear();
        edges.clear();
        obs.clear();
        histories.emplace_back();
        n_costs_ = n_costs;
    }

    int add_edge(int history_id, const Action& a) {
        ActionEdge e;
        e.action = a;
        e.q_cost = CostVec(n_costs_);
        e.c_bar = CostVec(n_costs_);
        edges.push_back(std::move(e));
        const int id = static_cast<int>(edges.size()) - 1;
        histories[history_id].children.push_back(id);
        return id;
    }

    int add_obs_child(int edge_id, const Obs& o) {
        ObsChild oc;
        oc.obs = o;
        histories.emplace_back();
        oc.history = static_cast<int>(histories.size()) - 1;
        obs.push_back(std::move(oc));
        const int id = static_cast<int>(obs.size()) - 1;
        edges[edge_id].obs_children.push_back(id);
        return id;
    }

    // Value-keyed lookup; continuous observations simply never repeat.
    int find_obs_child(int edge_id, const Obs& o) const {
        for (int id : edges[edge_id].obs_children)
            if (obs[id].obs == o) return id;
        return -1;
    }

    std::size_t n_costs_ = 0;
};

template <CpomdpModel M>
struct PftTree {
    using State = typename M::State;
    using Action = typename M::Action;

    struct BeliefNode {
        int n = 0;
        std::vector<int> children;
        std::vector<Action> untried;
        bool untried_ready = false;
        ParticleBelief<State> belief;
        bool terminal = false;
    };

    struct BeliefOutcome {
        int node = -1;
        double reward = 0.0;
        CostVec costs;
    };

    struct ActionEdge {
        Action action;
        int n = 0;
        double q = 0.0;
        CostVec q_cost;
        CostVec c_bar;
        std::vector<BeliefOutcome> outcomes;
    };

    std::vector<BeliefNode> nodes;
    std::vector<ActionEdge> edges;

    void reset(const M& model, ParticleBelief<State> root_belief, std::size_t n_costs) {
        nodes.clear();
        edges.clear();
        n_costs_ = n_costs;
        add_node(model, std::move(root_belief));
    }

    int add_node(const M& model, ParticleBelief<State> belief) {
        BeliefNode node;
        node.terminal = true;
        for (const State& s : belief.particles)
            if (!model.is_terminal(s)) {
                node.terminal = false;
                break;
            }
        node.belief = std::move(belief);
        nodes.push_back(std::move(node));
        return static_cast<int>(nodes.size()) - 1;
    }

    int add_edge(int node_id, const Action& a) {
        ActionEdge e;
        e.action = a;
        e.q_cost = CostVec(n_costs_);
        e.c_bar = CostVec(n_costs_);
        edges.push_back(std::move(e));
        const int id = static_cast<int>(edges.size()) - 1;
        nodes[node_id].children.push_back(id);
        return id;
    }

    std::size_t n_costs_ = 0;
};

namespace detail {

inline bool widening_allows(std::size_t n_children, double k, double alpha, int visits) {
    return static_cast<double>(n_children) <=
           k * std::pow(static_cast<double>(visits), alpha);
}

// NextAction: finite action sets hand out each untried action in a
// per-node shuffled order, then sample uniformly; continuous sets sample.
template <CpomdpModel M, class Node>
typename M::Action next_action(const M& model, Node& node, Rng& rng) {
    if constexpr (FiniteActionModel<M>) {
        if (!node.untried_ready) {
            node.untried = model.actions();
            rng.shuffle(node.untried);
            node.untried_ready = true;
        }
        if (!node.untried.empty()) {
            auto a = node.untried.back();
            node.untried.pop_back();
            return a;
        }
        const auto& acts = model.actions();
        return acts[rng.uniform_below(acts.size())];
    } else {
        return model.sample_action(rng);
    }
}

// ActionProgWiden: maybe admit a new child, then draw from GreedyPolicy.
// Returns the selected edge id. `scratch`/`policy` are caller-owned reuse
// buffers; nothing is retained across the call.
template <CpomdpModel M, class Tree, class Node>
int action_prog_widen(const M& model, Tree& tree, Node& node, const SearchConfig& cfg,
                      const CostVec& lambda, const CostVec& budget, int node_id, Rng& rng,
                      std::vector<ChildStat>& scratch, ActionPolicy& policy) {
    if (widening_allows(node.children.size(), cfg.k_action, cfg.alpha_action, node.n) ||
        node.children.empty()) {
        auto a = next_action<M>(model, node, rng);
        bool duplicate = false;
        for (int id : node.children)
            if (tree.edges[id].action == a) {
                duplicate = true;
                break;
            }
        if (!duplicate) tree.add_edge(node_id, a);
    }

    scratch.clear();
    for (int id : node.children) {
        const auto& e = tree.edges[id];
        scratch.push_back(ChildStat{e.n, e.q, e.q_cost});
    }
    greedy_policy(policy, scratch, node.n, lambda, cfg.exploration, cfg.nu, budget);
    return node.children[policy.sample(rng)];
}

}  // namespace detail

// Minimal cost propagation: the cost value returned from a history node is
// the minimum over its child actions. With multiple constraints the
// preference ordering is lambda-weighted scalarization, ties broken by the
// first component and then insertion order.
template <class Edge>
CostVec minimal_cost_return(const std::vector<int>& children, const std::vector<Edge>& edges,
                            const CostVec& lambda) {
    if (children.empty()) throw std::logic_error("minimal_cost_return: node has no children");
    const std::size_t k = edges[children[0]].q_cost.size();
    if (k == 0) return CostVec(0);
    if (k == 1) {
        double best = edges[children[0]].q_cost[0];
        for (int id : children) best = std::min(best, edges[id].q_cost[0]);
        CostVec out(1);
        out[0] = best;
        return out;
    }
    int best_id = children[0];
    double best_key = lambda.dot(edges[best_id].q_cost);
    for (int id : children) {
        const double key = lambda.dot(edges[id].q_cost);
        if (key < best_key - 1e-15) {
            best_id = id;
            best_key = key;
        } else if (std::fabs(key - best_key) <= 1e-15 &&
                   edges[id].q_cost[0] < edges[best_id].q_cost[0]) {
            best_id = id;
        }
    }
    return edges[best_id].q_cost;
}

}  // namespace cpomdp
