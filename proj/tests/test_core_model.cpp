#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cpomdp/core/particle_belief.hpp"
#include "cpomdp/problems/lightdark.hpp"
#include "cpomdp/problems/tiger.hpp"
#include "cpomdp/problems/vdp_tag.hpp"

namespace cpomdp {
namespace {

TEST(CostVec, Arithmetic) {
    CostVec a{1.0, 2.0};
    CostVec b{0.5, -1.0};
    auto c = a + b;
    EXPECT_DOUBLE_EQ(c[0], 1.5);
    EXPECT_DOUBLE_EQ(c[1], 1.0);
    EXPECT_DOUBLE_EQ(a.dot(b), 0.5 - 2.0);
    c = c * 2.0;
    EXPECT_DOUBLE_EQ(c[1], 2.0);
    c.clamp_nonnegative();
    CostVec d{-3.0, 4.0};
    d.clamp_nonnegative();
    EXPECT_DOUBLE_EQ(d[0], 0.0);
    EXPECT_DOUBLE_EQ(d[1], 4.0);
    EXPECT_TRUE(CostVec{0.05}.all_leq(CostVec{0.1}));
    EXPECT_FALSE(CostVec{0.2}.all_leq(CostVec{0.1}));
}

TEST(CostVec, RunningMeanMatchesDirectMean) {
    Rng rng(5);
    CostVec mean(2);
    double direct0 = 0.0, direct1 = 0.0;
    const int n = 1000;
    for (int i = 1; i <= n; ++i) {
        CostVec sample{rng.uniform(), rng.uniform(-1.0, 1.0)};
        direct0 += sample[0];
        direct1 += sample[1];
        mean.mean_update(sample, i);
    }
    EXPECT_NEAR(mean[0], direct0 / n, 1e-12);
    EXPECT_NEAR(mean[1], direct1 / n, 1e-12);
}

TEST(Rng, SeededStreamsAreReproducible) {
    Rng a(123), b(123);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
    Rng c(124);
    EXPECT_NE(a.next_u64(), c.next_u64());
}

TEST(Rng, NormalMoments) {
    Rng rng(7);
    double sum = 0.0, sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        sum += x;
        sq += x * x;
    }
    EXPECT_NEAR(sum / n, 0.0, 0.01);
    EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(Rng, CategoricalRespectsWeights) {
    Rng rng(9);
    std::vector<double> w = {0.0, 3.0, 1.0};
    int counts[3] = {0, 0, 0};
    for (int i = 0; i < 40000; ++i) counts[rng.categorical(w)] += 1;
    EXPECT_EQ(counts[0], 0);
    EXPECT_NEAR(counts[1] / 40000.0, 0.75, 0.01);
}

// --- generative_step contract on the bundled problems -----------------

TEST(LightDark, StopInGoalPaysOut) {
    LightDarkModel model;
    Rng rng(1);
    auto out = generative_step(model, {0.5, false}, 0, rng);
    EXPECT_TRUE(model.is_terminal(out.next_state));
    EXPECT_DOUBLE_EQ(out.reward, 100.0);
    EXPECT_DOUBLE_EQ(out.costs[0], 0.0);
}

TEST(LightDark, CliffCostsOnDestination) {
    LightDarkModel model;
    Rng rng(1);
    auto out = generative_step(model, {13.0, false}, 1, rng);
    EXPECT_DOUBLE_EQ(out.next_state.pos, 14.0);
    EXPECT_DOUBLE_EQ(out.costs[0], 1.0);
    EXPECT_DOUBLE_EQ(out.reward, -1.0);
}

TEST(LightDark, StopOutsideGoalPenalized) {
    LightDarkModel model;
    Rng rng(1);
    auto out = generative_step(model, {3.0, false}, 0, rng);
    EXPECT_TRUE(model.is_terminal(out.next_state));
    EXPECT_DOUBLE_EQ(out.reward, -100.0);
}

TEST(LightDark, TerminalInputRejected) {
    LightDarkModel model;
    Rng rng(1);
    EXPECT_THROW(generative_step(model, {0.0, true}, 1, rng), std::logic_error);
}

TEST(ObsDensity, GaussianPeakAndSymmetry) {
    LightDarkModel model;
    const LightDarkModel::State from{5.0, false};
    const LightDarkModel::State to{10.0, false};  // sigma = sigma_min = 0.5
    const double sigma = model.sigma(10.0);
    EXPECT_DOUBLE_EQ(sigma, 0.5);
    const double peak = model.obs_density(10.0, from, 5, to);
    EXPECT_NEAR(peak, 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi)), 1e-12);
    const double delta = 0.7;
    EXPECT_NEAR(model.obs_density(10.0 + delta, from, 5, to),
                model.obs_density(10.0 - delta, from, 5, to), 1e-15);
}

TEST(ObsDensity, DiscreteMassSumsToOne) {
    TigerModel model;
    const TigerModel::State s{true, false};
    for (int a : model.actions()) {
        const double total = model.obs_density(0, s, a, s) + model.obs_density(1, s, a, s);
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

// --- initial_belief ----------------------------------------------------

TEST(InitialBelief, LightDarkMomentsMatchPrior) {
    LightDarkModel model;
    Rng rng(42);
    auto b = initial_belief(model, 100000, rng);
    double mean = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) mean += b.weights[i] * b.particles[i].pos;
    double var = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i)
        var += b.weights[i] * (b.particles[i].pos - mean) * (b.particles[i].pos - mean);
    EXPECT_GE(mean, 1.95);
    EXPECT_LE(mean, 2.05);
    const double stddev = std::sqrt(var);
    EXPECT_GE(stddev, 1.96);
    EXPECT_LE(stddev, 2.04);
}

TEST(InitialBelief, SingleParticle) {
    LightDarkModel model;
    Rng rng(3);
    auto b = initial_belief(model, 1, rng);
    ASSERT_EQ(b.size(), 1u);
    EXPECT_DOUBLE_EQ(b.weights[0], 1.0);
}

TEST(InitialBelief, VdpAgentStartsAtOrigin) {
    VdpTagModel model;
    Rng rng(4);
    auto b = initial_belief(model, 64, rng);
    for (const auto& s : b.particles) {
        EXPECT_DOUBLE_EQ(s.agent.x, 0.0);
        EXPECT_DOUBLE_EQ(s.agent.y, 0.0);
        EXPECT_FALSE(s.tagged);
    }
    // targets vary
    bool distinct = false;
    for (std::size_t i = 1; i < b.size(); ++i)
        if (b.particles[i].target.x != b.particles[0].target.x) distinct = true;
    EXPECT_TRUE(distinct);
}

TEST(GenerativeStep, FixedSeedBitReproducible) {
    LightDarkModel model;
    Rng a(77), b(77);
    const LightDarkModel::State s{2.0, false};
    for (int i = 0; i < 100; ++i) {
        auto oa = model.step(s, 1, a);
        auto ob = model.step(s, 1, b);
        ASSERT_EQ(oa.observation, ob.observation);
        ASSERT_EQ(oa.next_state.pos, ob.next_state.pos);
    }
}

}  // namespace
}  // namespace cpomdp
