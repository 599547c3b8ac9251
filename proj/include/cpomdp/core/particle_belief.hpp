#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "cpomdp/core/model.hpp"
#include "cpomdp/core/rng.hpp"
#include "cpomdp/core/types.hpp"

namespace cpomdp {

// Weighted particle set. Kept normalized after every update; `normalized`
// only goes false transiently while weights are being rebuilt.
template <class State>
struct ParticleBelief {
    std::vector<State> particles;
    std::vector<double> weights;
    bool normalized = false;

    std::size_t size() const { return particles.size(); }

    static ParticleBelief uniform(std::vector<State> states) {
        ParticleBelief b;
        b.weights.assign(states.size(), 1.0 / static_cast<double>(states.size()));
        b.particles = std::move(states);
        b.normalized = true;
        return b;
    }

    void normalize() {
        double total = 0.0;
        for (double w : weights) total += w;
        if (total <= 0.0) throw std::logic_error("ParticleBelief: cannot normalize zero weights");
        for (double& w : weights) w /= total;
        normalized = true;
    }

    double effective_sample_size() const {
        double sum = 0.0, sum_sq = 0.0;
        for (double w : weights) {
            sum += w;
            sum_sq += w * w;
        }
        if (sum_sq <= 0.0) return 0.0;
        return (sum * sum) / sum_sq;
    }

    // One uniform draw regardless of particle count.
    const State& sample(Rng& rng) const {
        std::size_t i = rng.categorical({weights.data(), weights.size()});
        return particles[i];
    }
};

// Indices of a systematic resample of `count` particles from normalized
// weights. Single rng draw.
inline std::vector<std::size_t> systematic_resample_indices(const std::vector<double>& weights,
                                                            std::size_t count, Rng& rng) {
    std::vector<std::size_t> out;
    out.reserve(count);
    const double start = rng.uniform() / static_cast<double>(count);
    double cumulative = weights.empty() ? 0.0 : weights[0];
    std::size_t j = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const double u = start + static_cast<double>(i) / static_cast<double>(count);
        while (u > cumulative && j + 1 < weights.size()) cumulative += weights[++j];
        out.push_back(j);
    }
    return out;
}

template <CpomdpModel M>
ParticleBelief<typename M::State> initial_belief(const M& model, std::size_t n_particles,
                                                 Rng& rng) {
    if (n_particles < 1) throw std::invalid_argument("initial_belief: n_particles < 1");
    ParticleBelief<typename M::State> b;
    b.particles.reserve(n_particles);
    for (std::size_t i = 0; i < n_particles; ++i) b.particles.push_back(model.sample_initial(rng));
    b.weights.assign(n_particles, 1.0 / static_cast<double>(n_particles));
    b.normalized = true;
    return b;
}

template <class State>
struct PfStepResult {
    ParticleBelief<State> belief;
    double reward = 0.0;
    CostVec costs;
    bool depleted = false;
};

namespace detail {

inline std::vector<std::size_t> multinomial_indices(const std::vector<double>& weights,
                                                    std::size_t count, Rng& rng) {
    std::vector<double> cumulative(weights.size());
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        total += weights[i];
        cumulative[i] = total;
    }
    std::vector<std::size_t> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double u = rng.uniform() * total;
        auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
        std::size_t idx = static_cast<std::size_t>(it - cumulative.begin());
        if (idx >= weights.size()) idx = weights.size() - 1;
        out.push_back(idx);
    }
    return out;
}

}  // namespace detail

// G_PF(m): propagate m particles drawn from the belief through the
// generative model under a shared observation. One particle (the first
// non-terminal draw) emits o; every propagated particle is reweighted by
// Z(o | s, a, s'). Returned reward/costs are the means over the propagated
// sample, i.e. the belief-expected step reward and costs. Terminal particles
// pass through frozen with zero reward and cost.
template <CpomdpModel M>
PfStepResult<typename M::State> pf_step(const M& model,
                                        const ParticleBelief<typename M::State>& belief,
                                        const typename M::Action& action, std::size_t m,
                                        Rng& rng) {
    using State = typename M::State;
    if (m < 1) throw std::invalid_argument("pf_step: m < 1");
    if (belief.size() == 0) throw std::invalid_argument("pf_step: empty belief");

    const auto picks = detail::multinomial_indices(belief.weights, m, rng);

    std::vector<State> sources;
    std::vector<State> propagated;
    sources.reserve(m);
    propagated.reserve(m);
    double reward_sum = 0.0;
    CostVec cost_sum(model.n_costs());
    typename M::Observation shared_obs{};
    bool have_obs = false;

    for (std::size_t idx : picks) {
        const State& s = belief.particles[idx];
        sources.push_back(s);
        if (model.is_terminal(s)) {
            propagated.push_back(s);
            continue;
        }
        auto outcome = model.step(s, action, rng);
        if (!have_obs) {
            shared_obs = outcome.observation;
            have_obs = true;
        }
        reward_sum += outcome.reward;
        cost_sum += outcome.costs;
        propagated.push_back(std::move(outcome.next_state));
    }

    PfStepResult<State> result;
    result.reward = reward_sum / static_cast<double>(m);
    result.costs = cost_sum * (1.0 / static_cast<double>(m));

    ParticleBelief<State>& next = result.belief;
    next.particles = std::move(propagated);
    next.weights.resize(m);
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        double w = have_obs ? model.obs_density(shared_obs, sources[j], action, next.particles[j])
                            : 1.0;
        next.weights[j] = w;
        total += w;
    }

    if (total <= 0.0) {
        // Particle depletion: keep the transition prior with uniform weights.
        result.depleted = true;
        next.weights.assign(m, 1.0 / static_cast<double>(m));
        next.normalized = true;
        return result;
    }

    next.normalize();
    if (next.effective_sample_size() < static_cast<double>(m) / 10.0) {
        auto indices = systematic_resample_indices(next.weights, m, rng);
        std::vector<State> resampled;
        resampled.reserve(m);
        for (std::size_t idx : indices) resampled.push_back(next.particles[idx]);
        next.particles = std::move(resampled);
        next.weights.assign(m, 1.0 / static_cast<double>(m));
    }
    return result;
}

template <class State>
struct BeliefUpdateResult {
    ParticleBelief<State> belief;
    bool depleted = false;
    bool reinitialized = false;
};

// Bootstrap filter update for the environment-side belief: resample,
// propagate through the transition model, weight by the density of the
// actually observed o. Particles that claim a terminal state while the
// episode continues get zero weight.
template <CpomdpModel M>
BeliefUpdateResult<typename M::State> bootstrap_update(
    const M& model, const ParticleBelief<typename M::State>& belief,
    const typename M::Action& action, const typename M::Observation& obs, Rng& rng) {
    using State = typename M::State;
    const std::size_t n = belief.size();
    BeliefUpdateResult<State> result;

    auto indices = systematic_resample_indices(belief.weights, n, rng);
    std::vector<State> propagated;
    propagated.reserve(n);
    std::vector<double> weights(n, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const State& s = belief.particles[indices[i]];
        if (model.is_terminal(s)) {
            propagated.push_back(s);
            continue;  // weight stays 0: the episode did not end
        }
        auto outcome = model.step(s, action, rng);
        weights[i] = model.obs_density(obs, s, action, outcome.next_state);
        total += weights[i];
        propagated.push_back(std::move(outcome.next_state));
    }

    if (total <= 0.0) {
        // Depletion: fall back to the transition prior, restricted to live
        // states since the episode is still running.
        result.depleted = true;
        std::vector<State> alive;
        for (State& s : propagated)
            if (!model.is_terminal(s)) alive.push_back(std::move(s));
        if (alive.empty()) {
            result.reinitialized = true;
            result.belief = initial_belief(model, n, rng);
            return result;
        }
        result.belief = ParticleBelief<State>::uniform(std::move(alive));
        return result;
    }

    result.belief.particles = std::move(propagated);
    result.belief.weights = std::move(weights);
    result.belief.normalize();
    return result;
}

}  // namespace cpomdp
