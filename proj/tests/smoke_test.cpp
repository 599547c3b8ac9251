#include <gtest/gtest.h>

#include "cpomdp/harness/experiments.hpp"
#include "cpomdp/problems/lightdark.hpp"
#include "cpomdp/problems/tiger.hpp"
#include "cpomdp/problems/vdp_tag.hpp"

namespace cpomdp {
namespace {

TEST(Smoke, TigerPlanRuns) {
    TigerModel model;
    SearchConfig scfg;
    scfg.iterations = 200;
    scfg.max_depth = 3;
    scfg.exploration = 10.0;
    scfg.k_obs = 10.0;
    scfg.alpha_obs = 1.0;
    DualConfig dual;
    Rng rng(7);
    auto belief = initial_belief(model, 500, rng);
    CpomcpowSearch<TigerModel> search(model, scfg);
    auto result = plan(search, model, belief, scfg, dual, model.cost_budget(), rng);
    EXPECT_FALSE(result.diag.root_actions.empty());
}

TEST(Smoke, LightDarkEpisodeRuns) {
    LightDarkModel model;
    SearchConfig scfg;
    scfg.iterations = 100;
    scfg.max_depth = 10;
    DualConfig dual;
    HarnessConfig hcfg;
    hcfg.belief_particles = 200;
    hcfg.max_steps = 10;
    auto episode = run_episode(PlannerId::CpftDpw, model, model, scfg, dual, hcfg, 42);
    EXPECT_GE(episode.steps, 1);
}

TEST(Smoke, VdpStepRuns) {
    VdpTagModel model;
    Rng rng(3);
    auto s = model.sample_initial(rng);
    auto a = model.sample_action(rng);
    auto out = model.step(s, a, rng);
    EXPECT_EQ(out.costs.size(), 1u);
}

}  // namespace
}  // namespace cpomdp
