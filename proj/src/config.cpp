#include "soccer/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace soccer {

namespace {

using json = nlohmann::json;

// Applies the keys of `section` through `fields`, rejecting unknown keys so
// typos in config files fail loudly instead of silently using defaults.
class Section {
public:
    Section(const json& j, std::string name) : j_(j), name_(std::move(name)) {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            unknown_.insert(it.key());
    }

    template <typename T>
    void field(const char* key, T& out) {
        unknown_.erase(key);
        if (auto it = j_.find(key); it != j_.end()) {
            try {
                out = it->get<T>();
            } catch (const json::exception& e) {
                throw std::runtime_error("config: bad value for " + name_ +
                                         "." + key + ": " + e.what());
            }
        }
    }

    const json* subsection(const char* key) {
        unknown_.erase(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    ~Section() noexcept(false) {
        if (!unknown_.empty() && !std::uncaught_exceptions())
            throw std::runtime_error("config: unknown key '" + name_ + "." +
                                     *unknown_.begin() + "'");
    }

private:
    const json& j_;
    std::string name_;
    std::set<std::string> unknown_;
};

void apply_sim(const json& j, SimConfig& c) {
    Section s(j, "sim");
    s.field("dt", c.dt);
    s.field("substeps", c.substeps);
    s.field("agent_mass", c.agent_mass);
    s.field("ball_mass", c.ball_mass);
    s.field("max_speed", c.max_speed);
    s.field("max_ang_speed", c.max_ang_speed);
    s.field("max_kick_speed", c.max_kick_speed);
    s.field("pd_kp", c.pd_kp);
    s.field("pd_kd", c.pd_kd);
    s.field("pd_kp_ang", c.pd_kp_ang);
    s.field("pd_kd_ang", c.pd_kd_ang);
    s.field("max_force", c.max_force);
    s.field("max_torque", c.max_torque);
    s.field("ball_friction_half_life", c.ball_friction_half_life);
    s.field("restitution_wall", c.restitution_wall);
    s.field("restitution_agent", c.restitution_agent);
    s.field("restitution_ball", c.restitution_ball);
    s.field("episode_limit", c.episode_limit);
}

void apply_field(const json& j, FieldGeometry& c) {
    Section s(j, "field");
    s.field("field_length", c.field_length);
    s.field("field_width", c.field_width);
    s.field("goal_width", c.goal_width);
    s.field("wall_offset", c.wall_offset);
    s.field("kickable_radius", c.kickable_radius);
    s.field("ownership_radius", c.ownership_radius);
    s.field("agent_radius", c.agent_radius);
    s.field("ball_radius", c.ball_radius);
}

void apply_obs(const json& j, ObservationConfig& c) {
    Section s(j, "observation");
    s.field("history_len", c.history_len);
    s.field("n_max_neighbors", c.n_max_neighbors);
    s.field("noise_pose", c.noise_pose);
    s.field("noise_velocity", c.noise_velocity);
    s.field("count_clamp", c.count_clamp);
    s.field("norm_length", c.norm_length);
    s.field("norm_width", c.norm_width);
}

void apply_reward(const json& j, RewardConfig& c) {
    Section s(j, "reward");
    s.field("score", c.score);
    s.field("ball_outside", c.ball_outside);
    s.field("collision", c.collision);
    s.field("ball2goal_vel", c.ball2goal_vel);
    s.field("base2ball_vel", c.base2ball_vel);
    s.field("ball_direction", c.ball_direction);
    s.field("direction_sigma", c.direction_sigma);
    s.field("far_threshold", c.far_threshold);
    s.field("dense_active", c.dense_active);
}

void apply_net(const json& j, NetworkConfig& c) {
    Section s(j, "network");
    s.field("encoder_hidden", c.encoder_hidden);
    s.field("encoder_out", c.encoder_out);
    s.field("policy_hidden", c.policy_hidden);
    s.field("action_dim", c.action_dim);
}

void apply_trainer(const json& j, TrainerConfig& c) {
    Section s(j, "trainer");
    s.field("gamma", c.gamma);
    s.field("lam", c.lam);
    s.field("clip_ratio", c.clip_ratio);
    s.field("learning_rate", c.learning_rate);
    s.field("epochs", c.epochs);
    s.field("minibatches", c.minibatches);
    s.field("entropy_coef", c.entropy_coef);
    s.field("value_coef", c.value_coef);
    s.field("horizon", c.horizon);
    s.field("num_envs", c.num_envs);
    s.field("total_iterations", c.total_iterations);
    s.field("checkpoint_every", c.checkpoint_every);
    s.field("selfplay_buffer_size", c.selfplay_buffer_size);
    s.field("promote_winrate", c.promote_winrate);
    s.field("winrate_window", c.winrate_window);
    s.field("min_episodes_per_adversary", c.min_episodes_per_adversary);
    s.field("include_bot_adversary", c.include_bot_adversary);
    s.field("field_levels", c.field_levels);
    s.field("field_min_scale", c.field_min_scale);
    s.field("init_pos_levels", c.init_pos_levels);
    s.field("init_pos_min_frac", c.init_pos_min_frac);
    s.field("team_sizes", c.team_sizes);
}

void apply_scenario(const json& j, ScenarioConfig& c) {
    Section s(j, "scenario");
    s.field("name", c.name);
    s.field("ball_band_lo", c.ball_band_lo);
    s.field("ball_band_hi", c.ball_band_hi);
    s.field("n_blue", c.n_blue);
    s.field("n_red", c.n_red);
    s.field("duration", c.duration);
}

void validate(const PipelineConfig& c) {
    if (!c.field.valid()) throw std::runtime_error("config: invalid field geometry");
    if (c.sim.dt <= 0 || c.sim.substeps < 1)
        throw std::runtime_error("config: invalid sim timestep");
    if (c.obs.history_len < 1 || c.obs.n_max_neighbors < 0)
        throw std::runtime_error("config: invalid observation shape");
    if (c.trainer.minibatches < 1 || c.trainer.epochs < 1 ||
        c.trainer.horizon < 1 || c.trainer.num_envs < 1)
        throw std::runtime_error("config: invalid trainer sizes");
    if (c.trainer.team_sizes.empty())
        throw std::runtime_error("config: trainer.team_sizes must be non-empty");
    for (auto [nb, nr] : c.trainer.team_sizes)
        if (nb < 1 || nr < 0)
            throw std::runtime_error("config: invalid team size entry");
    if (c.scenario.ball_band_lo < 0 || c.scenario.ball_band_hi > 1 ||
        c.scenario.ball_band_lo > c.scenario.ball_band_hi)
        throw std::runtime_error("config: invalid scenario ball band");
}

}  // namespace

ScenarioConfig ScenarioConfig::named(const std::string& name, int n_blue,
                                     int n_red) {
    ScenarioConfig c;
    c.name = name;
    c.n_blue = n_blue;
    c.n_red = n_red;
    if (name == "Offensive") {
        c.ball_band_lo = 0.75;  // deep in the opponent half, near their goal
        c.ball_band_hi = 1.0;
    } else if (name == "Equal") {
        c.ball_band_lo = 0.45;
        c.ball_band_hi = 0.55;
    } else if (name == "Defensive") {
        c.ball_band_lo = 0.0;  // near the trainee's own goal
        c.ball_band_hi = 0.25;
    } else {
        throw std::runtime_error("unknown scenario '" + name +
                                 "' (expected Offensive, Equal or Defensive)");
    }
    return c;
}

PipelineConfig default_config() { return PipelineConfig{}; }

PipelineConfig load_config(const std::string& path) {
    PipelineConfig cfg = default_config();
    if (path.empty()) return cfg;

    std::ifstream is(path);
    if (!is) throw std::runtime_error("config: cannot open " + path);
    json j;
    try {
        j = json::parse(is);
    } catch (const json::exception& e) {
        throw std::runtime_error("config: parse error in " + path + ": " +
                                 e.what());
    }
    if (!j.is_object()) throw std::runtime_error("config: root must be an object");

    Section root(j, "");
    if (const json* s = root.subsection("sim")) apply_sim(*s, cfg.sim);
    if (const json* s = root.subsection("field")) apply_field(*s, cfg.field);
    if (const json* s = root.subsection("observation")) apply_obs(*s, cfg.obs);
    if (const json* s = root.subsection("reward")) apply_reward(*s, cfg.reward);
    if (const json* s = root.subsection("network")) apply_net(*s, cfg.net);
    if (const json* s = root.subsection("trainer")) apply_trainer(*s, cfg.trainer);
    if (const json* s = root.subsection("scenario")) apply_scenario(*s, cfg.scenario);

    validate(cfg);
    return cfg;
}

}  // namespace soccer
