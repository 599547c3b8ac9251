#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cpomdp/harness/experiments.hpp"

namespace cpomdp {

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// Episode CSV: planner,problem,seed,episode,V_R,V_C_1..K,steps,wall_ms.
inline void write_episode_csv(std::ostream& out, const std::string& problem,
                              const std::vector<PlannerBatch>& batches, std::size_t n_costs,
                              bool timing) {
    out << "planner,problem,seed,episode,V_R";
    for (std::size_t k = 1; k <= n_costs; ++k) out << ",V_C_" << k;
    out << ",steps,wall_ms\n";
    for (const auto& batch : batches) {
        for (std::size_t i = 0; i < batch.episodes.size(); ++i) {
            const auto& e = batch.episodes[i];
            out << planner_name(batch.planner) << ',' << problem << ',' << e.seed << ',' << i
                << ',' << fmt_double(e.reward_return);
            for (std::size_t k = 0; k < n_costs; ++k) out << ',' << fmt_double(e.cost_return[k]);
            out << ',' << e.steps << ',' << fmt_double(timing ? e.wall_ms_per_step : 0.0)
                << '\n';
        }
    }
}

inline nlohmann::json stats_json(const AggregateStats& s) {
    return {{"mean", s.mean}, {"sem", s.sem}, {"count", s.count}};
}

inline nlohmann::json summary_json(const std::string& problem, std::uint64_t base_seed,
                                   std::size_t episodes,
                                   const std::vector<PlannerBatch>& batches, bool timing) {
    nlohmann::json j;
    j["problem"] = problem;
    j["base_seed"] = base_seed;
    j["episodes"] = episodes;
    nlohmann::json planners = nlohmann::json::object();
    for (const auto& batch : batches) {
        nlohmann::json p;
        p["reward"] = stats_json(batch.reward);
        nlohmann::json costs = nlohmann::json::array();
        for (const auto& c : batch.costs) costs.push_back(stats_json(c));
        p["costs"] = costs;
        p["mean_steps"] = batch.mean_steps;
        if (timing) p["mean_wall_ms_per_step"] = batch.mean_wall_ms;
        planners[std::string(planner_name(batch.planner))] = p;
    }
    j["planners"] = planners;
    return j;
}

inline void print_comparison_grid(std::ostream& out, const std::string& problem,
                                  const std::vector<PlannerBatch>& batches) {
    out << "problem: " << problem << "\n";
    for (const auto& batch : batches) {
        out << "  " << planner_name(batch.planner) << ": V_R = " << fmt_short(batch.reward.mean)
            << " +- " << fmt_short(batch.reward.sem);
        for (std::size_t k = 0; k < batch.costs.size(); ++k)
            out << "  V_C_" << k + 1 << " = " << fmt_short(batch.costs[k].mean) << " +- "
                << fmt_short(batch.costs[k].sem);
        out << "  (steps " << fmt_short(batch.mean_steps) << ")\n";
    }
}

// Sweep summary plus one two-column (V_C V_R) per-episode file per point,
// readable by the bundled gnuplot script.
inline void write_pareto_outputs(const std::filesystem::path& dir,
                                 const std::vector<SweepPoint>& points) {
    std::filesystem::create_directories(dir);
    std::ofstream summary(dir / "pareto_summary.csv");
    summary << "lambda,constrained,mean_V_R,sem_V_R,mean_V_C,sem_V_C\n";
    for (const auto& p : points) {
        summary << (p.constrained ? "" : fmt_double(p.lambda)) << ','
                << (p.constrained ? 1 : 0) << ',' << fmt_double(p.batch.reward.mean) << ','
                << fmt_double(p.batch.reward.sem) << ',' << fmt_double(p.batch.costs[0].mean)
                << ',' << fmt_double(p.batch.costs[0].sem) << '\n';

        const std::string tag =
            p.constrained ? std::string("constrained") : "lambda_" + fmt_short(p.lambda);
        std::ofstream data(dir / ("pareto_" + tag + ".dat"));
        data << "# V_C V_R\n";
        for (const auto& e : p.batch.episodes)
            data << fmt_double(e.cost_return[0]) << ' ' << fmt_double(e.reward_return) << '\n';
    }
}

template <class Action, class Fmt>
void write_ablation_table(std::ostream& out, const std::vector<AblationRow<Action>>& rows,
                          Fmt&& format_action) {
    for (const auto& row : rows) {
        out << costprop_mode_name(row.mode) << ":";
        out << "  visit_frac [";
        for (std::size_t i = 0; i < row.per_action.size(); ++i)
            out << (i ? ", " : "") << fmt_short(row.per_action[i].visit_fraction.mean);
        out << "]  Q_c [";
        for (std::size_t i = 0; i < row.per_action.size(); ++i)
            out << (i ? ", " : "")
                << (row.mode == CostPropMode::Unconstrained
                        ? "---"
                        : fmt_short(row.per_action[i].q_cost.mean));
        out << "]  dQ_lambda [";
        for (std::size_t i = 0; i < row.per_action.size(); ++i)
            out << (i ? ", " : "") << fmt_short(row.per_action[i].q_lambda_gap.mean);
        out << "]  chosen: " << row.modal_action << "\n";
    }
}

// Line-oriented root statistics dump, one line per (search, root action).
template <class Action, class Fmt>
void write_root_dump(std::ostream& out, const std::vector<AblationSearchDump<Action>>& dumps,
                     Fmt&& format_action) {
    for (const auto& d : dumps) {
        out << "# search=" << d.search_index << " visits=" << d.root_visits << " lambda=";
        for (std::size_t k = 0; k < d.final_lambda.size(); ++k)
            out << (k ? "," : "") << fmt_double(d.final_lambda[k]);
        out << '\n';
        for (const auto& row : d.rows) {
            out << "search=" << d.search_index << " action=" << format_action(row.action)
                << " n=" << row.n << " q=" << fmt_double(row.q);
            out << " qc=";
            for (std::size_t k = 0; k < row.q_cost.size(); ++k)
                out << (k ? "," : "") << fmt_double(row.q_cost[k]);
            out << " cbar=";
            for (std::size_t k = 0; k < row.c_bar.size(); ++k)
                out << (k ? "," : "") << fmt_double(row.c_bar[k]);
            out << " qlambda=" << fmt_double(row.q_lambda) << '\n';
        }
    }
}

}  // namespace cpomdp
