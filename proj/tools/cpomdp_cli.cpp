// Command-line front end: reproducible experiment commands over the planning
// toolkit. Subcommands: run | pareto | ablation | oracle-test.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cpomdp/harness/run_config.hpp"
#include "cpomdp/harness/tiger_oracle.hpp"
#include "cpomdp/io/writers.hpp"

namespace fs = std::filesystem;
using namespace cpomdp;

namespace {

struct CliOverrides {
    std::string config_path;
    std::optional<std::size_t> episodes;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> jobs;
    std::optional<std::string> out_dir;
    std::optional<std::string> planners;
    std::optional<std::string> min_cost_prop;
    std::optional<std::string> rolling_budget;
};

void add_common_flags(CLI::App* cmd, CliOverrides& ov) {
    cmd->add_option("--config", ov.config_path, "configuration file (key = value sections)");
    cmd->add_option("--episodes", ov.episodes, "override harness.episodes");
    cmd->add_option("--seed", ov.seed, "override harness.base_seed");
    cmd->add_option("--jobs", ov.jobs, "worker pool size (0 = hardware)");
    cmd->add_option("--out-dir", ov.out_dir, "output directory (fallback: $CPOMDP_OUT_DIR)");
    cmd->add_option("--planner", ov.planners,
                    "override run.planners (comma list: cpomcp-dpw|cpomcpow|cpft-dpw|pomcpow|pft-dpw)");
    cmd->add_option("--min-cost-prop", ov.min_cost_prop, "on|off: minimal cost propagation")
        ->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--rolling-budget", ov.rolling_budget, "on|off: receding-horizon budget")
        ->check(CLI::IsMember({"on", "off"}));
}

RunConfig resolve_config(const CliOverrides& ov) {
    RunConfig cfg = ov.config_path.empty() ? default_config("lightdark")
                                           : load_config(ov.config_path);
    if (ov.episodes) cfg.episodes = *ov.episodes;
    if (ov.seed) cfg.base_seed = *ov.seed;
    if (ov.jobs) cfg.jobs = *ov.jobs;
    if (ov.out_dir) cfg.out_dir = *ov.out_dir;
    if (cfg.out_dir.empty()) {
        if (const char* env = std::getenv("CPOMDP_OUT_DIR")) cfg.out_dir = env;
    }
    if (ov.planners) {
        cfg.planners.clear();
        std::stringstream ss(*ov.planners);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) cfg.planners.push_back(parse_planner(item));
    }
    if (ov.min_cost_prop) cfg.search.min_cost_backup = (*ov.min_cost_prop == "on");
    if (ov.rolling_budget) cfg.dual.rolling_budget = (*ov.rolling_budget == "on");
    cfg.validate();
    return cfg;
}

template <CpomdpModel M>
int run_comparison_cmd(const M& model, const RunConfig& cfg) {
    auto batches = run_comparison(model, cfg.planners, cfg.search, cfg.dual, cfg.harness,
                                  cfg.episodes, cfg.base_seed, cfg.jobs);
    print_comparison_grid(std::cout, cfg.problem, batches);
    if (!cfg.out_dir.empty()) {
        fs::create_directories(cfg.out_dir);
        const fs::path dir(cfg.out_dir);
        std::ofstream csv(dir / ("comparison_" + cfg.problem + ".csv"));
        write_episode_csv(csv, cfg.problem, batches, model.n_costs(), cfg.timing);
        std::ofstream json(dir / ("summary_" + cfg.problem + ".json"));
        json << summary_json(cfg.problem, cfg.base_seed, cfg.episodes, batches, cfg.timing)
                    .dump(2)
             << '\n';
        std::cout << "wrote " << (dir / ("comparison_" + cfg.problem + ".csv")).string()
                  << " and summary JSON\n";
    }
    return 0;
}

int cmd_run(const CliOverrides& ov) {
    RunConfig cfg = resolve_config(ov);
    if (cfg.problem == "lightdark") return run_comparison_cmd(LightDarkModel(cfg.lightdark), cfg);
    if (cfg.problem == "vdp-tag") return run_comparison_cmd(VdpTagModel(cfg.vdp), cfg);
    if (cfg.problem == "tiger") return run_comparison_cmd(TigerModel(cfg.tiger), cfg);
    std::cerr << "unknown problem: " << cfg.problem << '\n';
    return 2;
}

template <CpomdpModel M>
int run_pareto_cmd(const M& model, const RunConfig& cfg) {
    auto points = run_pareto_sweep(model, cfg.pareto_grid, cfg.search, cfg.dual, cfg.harness,
                                   cfg.episodes, cfg.base_seed, cfg.jobs);
    for (const auto& p : points) {
        std::cout << (p.constrained ? std::string("constrained")
                                    : "lambda=" + fmt_short(p.lambda))
                  << ": V_R = " << fmt_short(p.batch.reward.mean) << " +- "
                  << fmt_short(p.batch.reward.sem)
                  << "  V_C = " << fmt_short(p.batch.costs[0].mean) << " +- "
                  << fmt_short(p.batch.costs[0].sem) << '\n';
    }
    if (!cfg.out_dir.empty()) {
        write_pareto_outputs(cfg.out_dir, points);
        std::cout << "wrote sweep data under " << cfg.out_dir << '\n';
    }
    return 0;
}

int cmd_pareto(const CliOverrides& ov) {
    RunConfig cfg = resolve_config(ov);
    if (cfg.problem == "lightdark") return run_pareto_cmd(LightDarkModel(cfg.lightdark), cfg);
    if (cfg.problem == "vdp-tag") return run_pareto_cmd(VdpTagModel(cfg.vdp), cfg);
    std::cerr << "pareto: unsupported problem '" << cfg.problem << "'\n";
    return 2;
}

int cmd_ablation(const CliOverrides& ov) {
    RunConfig cfg = resolve_config(ov);
    if (cfg.problem != "lightdark") {
        std::cerr << "ablation: the cost-propagation study is defined on lightdark\n";
        return 2;
    }
    LightDarkModel model(cfg.lightdark);
    const std::vector<int> focus = {1, 5, 10};
    auto rows = run_costprop_ablation(model, focus, cfg.search, cfg.dual, cfg.harness,
                                      cfg.ablation_searches, cfg.base_seed, cfg.jobs);
    auto fmt = [&](int a) { return model.format_action(a); };
    write_ablation_table(std::cout, rows, fmt);
    if (!cfg.out_dir.empty()) {
        fs::create_directories(cfg.out_dir);
        const fs::path dir(cfg.out_dir);
        std::ofstream table(dir / "ablation_table.txt");
        write_ablation_table(table, rows, fmt);
        for (const auto& row : rows) {
            std::ofstream dump(dir / ("ablation_" +
                                      std::string(costprop_mode_name(row.mode)) +
                                      "_rootstats.txt"));
            write_root_dump(dump, row.dumps, fmt);
        }
        std::cout << "wrote ablation outputs under " << cfg.out_dir << '\n';
    }
    return 0;
}

int cmd_oracle(const CliOverrides& ov) {
    CliOverrides adjusted = ov;
    RunConfig cfg;
    if (adjusted.config_path.empty()) {
        cfg = default_config("tiger");
        adjusted.config_path.clear();
        if (adjusted.episodes) cfg.episodes = *adjusted.episodes;
        if (adjusted.seed) cfg.base_seed = *adjusted.seed;
        if (adjusted.jobs) cfg.jobs = *adjusted.jobs;
    } else {
        cfg = resolve_config(adjusted);
    }
    if (cfg.problem != "tiger") {
        std::cerr << "oracle-test: config must use problem = tiger\n";
        return 2;
    }
    TigerModel model(cfg.tiger);
    const auto oracle = solve_tiger_oracle(model.config(), cfg.search.max_depth);
    std::cout << "enumerated optimum (depth " << cfg.search.max_depth
              << "): constrained action = " << model.format_action(oracle.constrained_action)
              << " (V_R " << fmt_short(oracle.constrained_reward) << ", V_C "
              << fmt_short(oracle.constrained_cost) << "), unconstrained action = "
              << model.format_action(oracle.unconstrained_action) << " (V_R "
              << fmt_short(oracle.unconstrained_reward) << ", V_C "
              << fmt_short(oracle.unconstrained_cost) << ")\n";
    for (PlannerId planner :
         {PlannerId::Cpomcpow, PlannerId::CpftDpw, PlannerId::CpomcpDpw}) {
        auto res = run_tiger_oracle_check(model, planner, cfg.search, cfg.dual, cfg.harness,
                                          cfg.oracle_searches, cfg.base_seed, cfg.jobs);
        std::cout << planner_name(planner) << ": matched " << res.matches << "/"
                  << res.searches << " (" << fmt_short(100.0 * res.match_rate()) << "%)\n";
    }
    return 0;
}

std::string config_reference() {
    std::ostringstream out;
    out << "Configuration keys (key = value under [section]; defaults per problem):\n";
    for (const char* problem : {"lightdark", "vdp-tag", "tiger"}) {
        RunConfig cfg = default_config(problem);
        out << "\n  problem = " << problem << "\n";
        out << "    [run] planners = ";
        for (std::size_t i = 0; i < cfg.planners.size(); ++i)
            out << (i ? "," : "") << planner_name(cfg.planners[i]);
        out << "\n    [search] iterations=" << cfg.search.iterations
            << " max_depth=" << cfg.search.max_depth << " k_action=" << cfg.search.k_action
            << " alpha_action=" << cfg.search.alpha_action << " k_obs=" << cfg.search.k_obs
            << " alpha_obs=" << cfg.search.alpha_obs
            << " exploration=" << cfg.search.exploration << " nu=" << cfg.search.nu
            << " pf_width=" << cfg.search.pf_width << " min_cost_prop=off rollout="
            << (cfg.search.rollout == RolloutPolicy::Random ? "random" : "problem");
        out << "\n    [dual] lambda0=0 a_step=" << cfg.dual.a_step
            << " b_step=" << cfg.dual.b_step
            << " rolling_budget=" << (cfg.dual.rolling_budget ? "on" : "off");
        out << "\n    [harness] episodes=" << cfg.episodes
            << " max_steps=" << cfg.harness.max_steps
            << " belief_particles=" << cfg.harness.belief_particles
            << " base_seed=" << cfg.base_seed << " jobs=" << cfg.jobs;
        out << "\n    [output] dir= timing=on";
        if (std::string(problem) == "lightdark") {
            const auto& m = cfg.lightdark;
            out << "\n    [problem] gamma=" << m.gamma << " budget=" << m.budget
                << " goal_lo=" << m.goal_lo << " goal_hi=" << m.goal_hi
                << " light_loc=" << m.light_loc << " cliff=" << m.cliff
                << " step_reward=" << m.step_reward << " goal_reward=" << m.goal_reward
                << " wrong_stop_reward=" << m.wrong_stop_reward
                << " cliff_cost=" << m.cliff_cost << " sigma_min=" << m.sigma_min
                << " init_mean=" << m.init_mean << " init_std=" << m.init_std;
            out << "\n    [pareto] lambda_grid=0,1,5,10,50,100,500,10000";
            out << "\n    [ablation] searches=" << cfg.ablation_searches;
        } else if (std::string(problem) == "vdp-tag") {
            const auto& m = cfg.vdp;
            out << "\n    [problem] gamma=" << m.gamma << " budget=" << m.budget
                << " agent_speed=" << m.agent_speed << " mu=" << m.mu
                << " interval=" << m.interval << " rk4_dt=" << m.rk4_dt
                << " process_noise_std=" << m.process_noise_std
                << " tag_radius=" << m.tag_radius << " tag_reward=" << m.tag_reward
                << " step_reward=" << m.step_reward << " look_cost=" << m.look_cost
                << " obs_std_look=" << m.obs_std_look
                << " obs_std_relaxed=" << m.obs_std_relaxed
                << " target_init_lo=" << m.target_init_lo
                << " target_init_hi=" << m.target_init_hi;
        } else {
            const auto& m = cfg.tiger;
            out << "\n    [problem] gamma=" << m.gamma << " budget=" << m.budget
                << " p_hazard=" << m.p_hazard << " p_accurate=" << m.p_accurate
                << " listen_reward=" << m.listen_reward << " listen_cost=" << m.listen_cost
                << " go_safe_reward=" << m.go_safe_reward
                << " go_hazard_reward=" << m.go_hazard_reward;
            out << "\n    [oracle] searches=" << cfg.oracle_searches;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Online planning for constrained POMDPs with continuous spaces"};
    app.require_subcommand(1);
    app.footer(config_reference());

    CliOverrides run_ov, pareto_ov, ablation_ov, oracle_ov;
    auto* run = app.add_subcommand("run", "episode batches per planner; CSV + JSON outputs");
    add_common_flags(run, run_ov);
    auto* pareto =
        app.add_subcommand("pareto", "scalarization sweep plus the constrained planner point");
    add_common_flags(pareto, pareto_ov);
    auto* ablation =
        app.add_subcommand("ablation", "cost-propagation study from the initial belief");
    add_common_flags(ablation, ablation_ov);
    auto* oracle = app.add_subcommand(
        "oracle-test", "planner vs exhaustively enumerated optimum on the discrete oracle");
    add_common_flags(oracle, oracle_ov);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(run_ov);
        if (pareto->parsed()) return cmd_pareto(pareto_ov);
        if (ablation->parsed()) return cmd_ablation(ablation_ov);
        if (oracle->parsed()) return cmd_oracle(oracle_ov);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
