#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cpomdp/core/model.hpp"

namespace cpomdp {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Van der Pol vector field in Lienard form: dx = mu (x - x^3/3 - y),
// dy = x / mu.
inline Vec2 vdp_field(const Vec2& p, double mu) {
    return {mu * (p.x - p.x * p.x * p.x / 3.0 - p.y), p.x / mu};
}

// Integrate the field over `interval` with fixed RK4 substeps of size `dt`
// (the last substep is shortened to land exactly on the interval).
inline Vec2 integrate_vdp(Vec2 p, double mu, double interval, double dt) {
    double remaining = interval;
    while (remaining > 1e-12) {
        const double h = std::min(dt, remaining);
        const Vec2 k1 = vdp_field(p, mu);
        const Vec2 k2 = vdp_field({p.x + 0.5 * h * k1.x, p.y + 0.5 * h * k1.y}, mu);
        const Vec2 k3 = vdp_field({p.x + 0.5 * h * k2.x, p.y + 0.5 * h * k2.y}, mu);
        const Vec2 k4 = vdp_field({p.x + h * k3.x, p.y + h * k3.y}, mu);
        p.x += h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
        p.y += h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
        remaining -= h;
    }
    return p;
}

inline double wrap_angle(double a) {
    const double two_pi = 2.0 * std::numbers::pi;
    a = std::fmod(a, two_pi);
    if (a > std::numbers::pi) a -= two_pi;
    if (a <= -std::numbers::pi) a += two_pi;
    return a;
}

// Constrained Van der Pol Tag: a unit-speed agent picks a heading each step
// to intercept a target drifting along the Van der Pol flow. The "look"
// flag sharpens the bearing sensor and costs 1 against a discounted budget
// on good observations.
struct VdpTagConfig {
    double gamma = 0.95;
    double budget = 2.5;
    double agent_speed = 1.0;   // displacement per decision step
    double mu = 2.0;
    double interval = 0.1;      // decision-step integration horizon
    double rk4_dt = 0.1;        // integrator substep
    double process_noise_std = 0.05;
    double tag_radius = 0.1;
    double tag_reward = 100.0;
    double step_reward = -1.0;
    double look_cost = 1.0;
    double obs_std_look = 0.05;
    double obs_std_relaxed = 1.0;
    double target_init_lo = -4.0;
    double target_init_hi = 4.0;
};

class VdpTagModel {
public:
    struct State {
        Vec2 agent;
        Vec2 target;
        bool tagged = false;
    };
    struct Action {
        double heading = 0.0;  // [0, 2*pi)
        bool look = false;

        friend bool operator==(const Action& a, const Action& b) {
            return a.heading == b.heading && a.look == b.look;
        }
    };
    using Observation = double;  // bearing, radians

    explicit VdpTagModel(VdpTagConfig cfg = {}) : cfg_(cfg) {}

    const VdpTagConfig& config() const { return cfg_; }
    double discount() const { return cfg_.gamma; }
    std::size_t n_costs() const { return 1; }
    CostVec cost_budget() const { return CostVec{cfg_.budget}; }

    bool is_terminal(const State& s) const { return s.tagged; }

    State sample_initial(Rng& rng) const {
        State s;
        s.agent = {0.0, 0.0};
        s.target = {rng.uniform(cfg_.target_init_lo, cfg_.target_init_hi),
                    rng.uniform(cfg_.target_init_lo, cfg_.target_init_hi)};
        return s;
    }

    Action sample_action(Rng& rng) const {
        return Action{rng.uniform(0.0, 2.0 * std::numbers::pi), rng.uniform() < 0.5};
    }

    // Chase rollout: head straight at the target, never look.
    Action rollout_action(const State& s, Rng&) const {
        double h = std::atan2(s.target.y - s.agent.y, s.target.x - s.agent.x);
        if (h < 0.0) h += 2.0 * std::numbers::pi;
        return Action{h, false};
    }

    Vec2 target_step(const Vec2& target, double dt, Rng& rng) const {
        Vec2 next = integrate_vdp(target, cfg_.mu, cfg_.interval, dt);
        next.x += rng.normal(0.0, cfg_.process_noise_std);
        next.y += rng.normal(0.0, cfg_.process_noise_std);
        // Fixed-step RK4 diverges outside the attractor's basin at coarse
        // substeps; freeze such particles instead of propagating non-finite
        // coordinates into the filters.
        if (!std::isfinite(next.x) || !std::isfinite(next.y)) return target;
        return next;
    }

    GenerativeOutcome<State, Observation> step(const State& s, const Action& a, Rng& rng) const {
        GenerativeOutcome<State, Observation> out;
        State next;
        next.agent = {s.agent.x + cfg_.agent_speed * std::cos(a.heading),
                      s.agent.y + cfg_.agent_speed * std::sin(a.heading)};
        next.target = target_step(s.target, cfg_.rk4_dt, rng);
        // Interception: the tag lands if the agent's swept path passes
        // within the tag radius of the target's new position.
        next.tagged = segment_distance(s.agent, next.agent, next.target) <= cfg_.tag_radius;
        out.reward = reward(s, a, next);
        out.costs = costs(s, a, next);
        out.observation = rng.normal(bearing(next), obs_std(a));
        out.next_state = next;
        return out;
    }

    double reward(const State&, const Action&, const State& next) const {
        return next.tagged ? cfg_.tag_reward : cfg_.step_reward;
    }

    CostVec costs(const State&, const Action& a, const State&) const {
        return CostVec{a.look ? cfg_.look_cost : 0.0};
    }

    double obs_density(Observation o, const State&, const Action& a, const State& next) const {
        const double sd = obs_std(a);
        return gaussian_pdf(wrap_angle(o - bearing(next)), 0.0, sd);
    }

    std::string format_action(const Action& a) const {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%.4f%s", a.heading, a.look ? "+look" : "");
        return buf;
    }

    static double distance(const Vec2& a, const Vec2& b) {
        return std::hypot(a.x - b.x, a.y - b.y);
    }

    // Distance from point p to the segment a-b.
    static double segment_distance(const Vec2& a, const Vec2& b, const Vec2& p) {
        const double dx = b.x - a.x, dy = b.y - a.y;
        const double len_sq = dx * dx + dy * dy;
        if (len_sq <= 0.0) return distance(a, p);
        double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len_sq;
        t = std::clamp(t, 0.0, 1.0);
        return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
    }

    static double bearing(const State& s) {
        return std::atan2(s.target.y - s.agent.y, s.target.x - s.agent.x);
    }

private:
    double obs_std(const Action& a) const {
        return a.look ? cfg_.obs_std_look : cfg_.obs_std_relaxed;
    }

    VdpTagConfig cfg_;
};

}  // namespace cpomdp
