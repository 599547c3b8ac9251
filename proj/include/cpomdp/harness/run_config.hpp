#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cpomdp/harness/episode.hpp"
#include "cpomdp/problems/lightdark.hpp"
#include "cpomdp/problems/tiger.hpp"
#include "cpomdp/problems/vdp_tag.hpp"

namespace cpomdp {

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& file, int line, const std::string& message)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + message) {}
};

// Flat key = value configuration with [section] headers. Unknown keys are
// rejected with the offending line.
struct RunConfig {
    std::string problem = "lightdark";
    std::vector<PlannerId> planners = {PlannerId::Cpomcpow, PlannerId::CpftDpw,
                                       PlannerId::CpomcpDpw};
    SearchConfig search;
    DualConfig dual;
    HarnessConfig harness;
    std::size_t episodes = 100;
    std::uint64_t base_seed = 1;
    std::size_t jobs = 0;  // 0 = hardware concurrency
    std::string out_dir;
    bool timing = true;
    std::vector<double> pareto_grid = {0.0, 1.0, 5.0, 10.0, 50.0, 100.0, 500.0, 10000.0};
    std::size_t ablation_searches = 50;
    std::size_t oracle_searches = 200;

    LightDarkConfig lightdark;
    VdpTagConfig vdp;
    TigerConfig tiger;

    void validate() const {
        search.validate();
        dual.validate();
        harness.validate();
        if (episodes < 1) throw std::invalid_argument("harness: episodes must be >= 1");
        if (planners.empty()) throw std::invalid_argument("run: planners must be non-empty");
    }
};

inline RunConfig default_config(std::string_view problem) {
    RunConfig cfg;
    cfg.problem = problem;
    if (problem == "lightdark") {
        cfg.search = SearchConfig{10000, 10, 10.0, 1.0, 2.0, 0.1, 20.0, 1.0, 30, false,
                                  RolloutPolicy::Problem};
        cfg.dual.a_step = 20.0;
        cfg.harness = HarnessConfig{10000, 100};
        cfg.episodes = 100;
    } else if (problem == "vdp-tag") {
        cfg.search = SearchConfig{5000, 10, 8.0, 0.25, 5.0, 0.1, 110.0, 0.01, 30, false,
                                  RolloutPolicy::Problem};
        cfg.harness = HarnessConfig{5000, 50};
        cfg.episodes = 50;
    } else if (problem == "tiger") {
        cfg.search = SearchConfig{8000, 3, 10.0, 1.0, 3.0, 0.15, 12.0, 0.01, 100, false,
                                  RolloutPolicy::Random};
        cfg.harness = HarnessConfig{1000, 10};
        cfg.episodes = 100;
    } else {
        throw std::invalid_argument("unknown problem id: " + std::string(problem));
    }
    return cfg;
}

namespace detail {

inline std::string trim(std::string s) {
    const auto issp = [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    return s;
}

struct ConfigParser {
    const std::string& file;
    int line = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(file, line, msg); }

    double number(const std::string& v) const {
        try {
            std::size_t used = 0;
            double d = std::stod(v, &used);
            if (used != v.size()) fail("trailing characters in number: '" + v + "'");
            return d;
        } catch (const ConfigError&) {
            throw;
        } catch (...) {
            fail("expected a number, got '" + v + "'");
        }
    }

    long long integer(const std::string& v) const {
        const double d = number(v);
        const long long i = static_cast<long long>(d);
        if (static_cast<double>(i) != d) fail("expected an integer, got '" + v + "'");
        return i;
    }

    bool flag(const std::string& v) const {
        if (v == "on" || v == "true" || v == "1") return true;
        if (v == "off" || v == "false" || v == "0") return false;
        fail("expected on/off, got '" + v + "'");
    }

    std::vector<double> number_list(const std::string& v) const {
        std::vector<double> out;
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (!item.empty()) out.push_back(number(item));
        }
        if (out.empty()) fail("expected a comma-separated number list");
        return out;
    }
};

inline bool apply_problem_key(RunConfig& cfg, const ConfigParser& p, const std::string& key,
                              const std::string& value) {
    if (cfg.problem == "lightdark") {
        auto& m = cfg.lightdark;
        if (key == "gamma") m.gamma = p.number(value);
        else if (key == "budget") m.budget = p.number(value);
        else if (key == "goal_lo") m.goal_lo = p.number(value);
        else if (key == "goal_hi") m.goal_hi = p.number(value);
        else if (key == "light_loc") m.light_loc = p.number(value);
        else if (key == "cliff") m.cliff = p.number(value);
        else if (key == "step_reward") m.step_reward = p.number(value);
        else if (key == "goal_reward") m.goal_reward = p.number(value);
        else if (key == "wrong_stop_reward") m.wrong_stop_reward = p.number(value);
        else if (key == "cliff_cost") m.cliff_cost = p.number(value);
        else if (key == "sigma_min") m.sigma_min = p.number(value);
        else if (key == "init_mean") m.init_mean = p.number(value);
        else if (key == "init_std") m.init_std = p.number(value);
        else return false;
        return true;
    }
    if (cfg.problem == "vdp-tag") {
        auto& m = cfg.vdp;
        if (key == "gamma") m.gamma = p.number(value);
        else if (key == "budget") m.budget = p.number(value);
        else if (key == "agent_speed") m.agent_speed = p.number(value);
        else if (key == "mu") m.mu = p.number(value);
        else if (key == "interval") m.interval = p.number(value);
        else if (key == "rk4_dt") m.rk4_dt = p.number(value);
        else if (key == "process_noise_std") m.process_noise_std = p.number(value);
        else if (key == "tag_radius") m.tag_radius = p.number(value);
        else if (key == "tag_reward") m.tag_reward = p.number(value);
        else if (key == "step_reward") m.step_reward = p.number(value);
        else if (key == "look_cost") m.look_cost = p.number(value);
        else if (key == "obs_std_look") m.obs_std_look = p.number(value);
        else if (key == "obs_std_relaxed") m.obs_std_relaxed = p.number(value);
        else if (key == "target_init_lo") m.target_init_lo = p.number(value);
        else if (key == "target_init_hi") m.target_init_hi = p.number(value);
        else return false;
        return true;
    }
    if (cfg.problem == "tiger") {
        auto& m = cfg.tiger;
        if (key == "gamma") m.gamma = p.number(value);
        else if (key == "budget") m.budget = p.number(value);
        else if (key == "p_hazard") m.p_hazard = p.number(value);
        else if (key == "p_accurate") m.p_accurate = p.number(value);
        else if (key == "listen_reward") m.listen_reward = p.number(value);
        else if (key == "listen_cost") m.listen_cost = p.number(value);
        else if (key == "go_safe_reward") m.go_safe_reward = p.number(value);
        else if (key == "go_hazard_reward") m.go_hazard_reward = p.number(value);
        else return false;
        return true;
    }
    return false;
}

}  // namespace detail

// Applies `text` on top of `cfg`. The problem id must already be resolved
// (see load_config), so per-problem defaults are in place before overrides.
inline void apply_config_text(RunConfig& cfg, const std::string& text,
                              const std::string& filename) {
    std::istringstream in(text);
    std::string raw;
    std::string section;
    detail::ConfigParser parser{filename, 0};
    while (std::getline(in, raw)) {
        ++parser.line;
        std::string line = detail::trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') parser.fail("malformed section header");
            section = detail::trim(line.substr(1, line.size() - 2));
            if (section != "run" && section != "problem" && section != "search" &&
                section != "dual" && section != "harness" && section != "output" &&
                section != "pareto" && section != "ablation" && section != "oracle")
                parser.fail("unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) parser.fail("expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty()) parser.fail("empty key");
        if (section.empty()) parser.fail("key outside any [section]");

        if (section == "run") {
            if (key == "problem") {
                if (value != cfg.problem)
                    parser.fail("problem id changed mid-file (resolved to '" + cfg.problem +
                                "')");
            } else if (key == "planners" || key == "planner") {
                cfg.planners.clear();
                std::stringstream ss(value);
                std::string item;
                while (std::getline(ss, item, ','))
                    if (!(item = detail::trim(item)).empty()) {
                        try {
                            cfg.planners.push_back(parse_planner(item));
                        } catch (const std::invalid_argument& e) {
                            parser.fail(e.what());
                        }
                    }
                if (cfg.planners.empty()) parser.fail("empty planner list");
            } else {
                parser.fail("unknown key 'run." + key + "'");
            }
        } else if (section == "problem") {
            if (!detail::apply_problem_key(cfg, parser, key, value))
                parser.fail("unknown key 'problem." + key + "' for problem '" + cfg.problem +
                            "'");
        } else if (section == "search") {
            auto& s = cfg.search;
            if (key == "iterations") s.iterations = static_cast<std::size_t>(parser.integer(value));
            else if (key == "max_depth") s.max_depth = static_cast<int>(parser.integer(value));
            else if (key == "k_action") s.k_action = parser.number(value);
            else if (key == "alpha_action") s.alpha_action = parser.number(value);
            else if (key == "k_obs") s.k_obs = parser.number(value);
            else if (key == "alpha_obs") s.alpha_obs = parser.number(value);
            else if (key == "exploration") s.exploration = parser.number(value);
            else if (key == "nu") s.nu = parser.number(value);
            else if (key == "pf_width") s.pf_width = static_cast<std::size_t>(parser.integer(value));
            else if (key == "min_cost_prop") s.min_cost_backup = parser.flag(value);
            else if (key == "rollout") {
                if (value == "random") s.rollout = RolloutPolicy::Random;
                else if (value == "problem") s.rollout = RolloutPolicy::Problem;
                else if (value == "hold") s.rollout = RolloutPolicy::Hold;
                else parser.fail("rollout must be 'random', 'problem', or 'hold'");
            } else parser.fail("unknown key 'search." + key + "'");
        } else if (section == "dual") {
            auto& d = cfg.dual;
            if (key == "lambda0") d.lambda0 = parser.number_list(value);
            else if (key == "a_step") d.a_step = parser.number(value);
            else if (key == "b_step") d.b_step = parser.number(value);
            else if (key == "rolling_budget") d.rolling_budget = parser.flag(value);
            else parser.fail("unknown key 'dual." + key + "'");
        } else if (section == "harness") {
            if (key == "episodes") cfg.episodes = static_cast<std::size_t>(parser.integer(value));
            else if (key == "max_steps") cfg.harness.max_steps = static_cast<int>(parser.integer(value));
            else if (key == "belief_particles")
                cfg.harness.belief_particles = static_cast<std::size_t>(parser.integer(value));
            else if (key == "base_seed") cfg.base_seed = static_cast<std::uint64_t>(parser.integer(value));
            else if (key == "jobs") cfg.jobs = static_cast<std::size_t>(parser.integer(value));
            else parser.fail("unknown key 'harness." + key + "'");
        } else if (section == "output") {
            if (key == "dir") cfg.out_dir = value;
            else if (key == "timing") cfg.timing = parser.flag(value);
            else parser.fail("unknown key 'output." + key + "'");
        } else if (section == "pareto") {
            if (key == "lambda_grid") cfg.pareto_grid = parser.number_list(value);
            else parser.fail("unknown key 'pareto." + key + "'");
        } else if (section == "ablation") {
            if (key == "searches")
                cfg.ablation_searches = static_cast<std::size_t>(parser.integer(value));
            else parser.fail("unknown key 'ablation." + key + "'");
        } else if (section == "oracle") {
            if (key == "searches")
                cfg.oracle_searches = static_cast<std::size_t>(parser.integer(value));
            else parser.fail("unknown key 'oracle." + key + "'");
        }
    }
}

// Peeks run.problem, builds that problem's defaults, then applies the file.
inline RunConfig parse_config_text(const std::string& text, const std::string& filename) {
    std::string problem = "lightdark";
    {
        std::istringstream in(text);
        std::string raw, section;
        int line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            std::string line = detail::trim(raw);
            if (line.empty() || line[0] == '#' || line[0] == ';') continue;
            if (line.front() == '[') {
                section = detail::trim(line.substr(1, line.size() - 2));
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;  // reported by the main pass
            if (section == "run" && detail::trim(line.substr(0, eq)) == "problem") {
                problem = detail::trim(line.substr(eq + 1));
                if (problem != "lightdark" && problem != "vdp-tag" && problem != "tiger")
                    throw ConfigError(filename, line_no, "unknown problem id '" + problem + "'");
            }
        }
    }
    RunConfig cfg = default_config(problem);
    apply_config_text(cfg, text, filename);
    if (cfg.search.rollout == RolloutPolicy::Hold && cfg.problem != "lightdark")
        throw ConfigError(filename, 0, "rollout = hold is only defined for lightdark");
    if (cfg.search.rollout == RolloutPolicy::Problem && cfg.problem == "tiger")
        throw ConfigError(filename, 0, "tiger has no problem rollout policy; use random");
    cfg.validate();
    return cfg;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

}  // namespace cpomdp
