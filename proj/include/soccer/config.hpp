#pragma once

#include <string>
#include <utility>
#include <vector>

#include "soccer/world.hpp"

namespace soccer {

struct SimConfig {
    double dt = 0.1;          // control step
    int substeps = 4;         // physics substeps per control step
    double agent_mass = 5.0;
    double ball_mass = 0.45;
    double max_speed = 1.5;       // m/s, translational command scale
    double max_ang_speed = 4.0;   // rad/s
    double max_kick_speed = 4.0;  // m/s
    double pd_kp = 60.0;          // N per m/s velocity error
    double pd_kd = 1.0;
    double pd_kp_ang = 2.0;       // N*m per rad/s error
    double pd_kd_ang = 0.02;
    double max_force = 80.0;
    double max_torque = 4.0;
    double ball_friction_half_life = 1.5;  // s, exponential speed decay
    double restitution_wall = 0.2;
    double restitution_agent = 0.0;  // agent-agent, normal direction
    double restitution_ball = 0.5;   // ball-agent
    double episode_limit = 30.0;     // s

    double agent_inertia(double radius) const {
        return 0.5 * agent_mass * radius * radius;
    }
};

struct ObservationConfig {
    int history_len = 2;       // H: current pose + H-1 past poses per neighbor
    int n_max_neighbors = 3;
    double noise_pose = 0.002;      // actor noise half-range, poses/positions
    double noise_velocity = 0.005;  // actor noise half-range, velocities
    int count_clamp = 3;            // active-agent counts saturate here
    // Nominal (level-max) field dimensions used as normalization divisors.
    double norm_length = 9.0;
    double norm_width = 6.0;

    int local_dim() const { return 18; }
    int entity_dim() const { return 4 * history_len; }
};

struct RewardConfig {
    double score = 100.0;
    double ball_outside = 1.0;
    double collision = 1.0;
    double ball2goal_vel = 2.0;
    double base2ball_vel = 0.5;
    double ball_direction = 0.025;
    double direction_sigma = 0.4;
    double far_threshold = 0.5;  // m, base2ball reward gate
    bool dense_active = true;
};

struct NetworkConfig {
    std::vector<int> encoder_hidden = {64, 32};
    int encoder_out = 16;
    std::vector<int> policy_hidden = {128, 128, 128};
    int action_dim = 5;
};

struct TrainerConfig {
    double gamma = 0.99;
    double lam = 0.95;
    double clip_ratio = 0.2;
    double learning_rate = 3e-4;
    int epochs = 5;
    int minibatches = 4;
    double entropy_coef = 0.005;
    double value_coef = 0.5;
    int horizon = 24;          // control steps per collection
    int num_envs = 64;
    int total_iterations = 2000;
    int checkpoint_every = 200;

    // Self-play and curricula
    int selfplay_buffer_size = 8;
    double promote_winrate = 0.75;
    int winrate_window = 100;
    int min_episodes_per_adversary = 30;
    bool include_bot_adversary = true;
    int field_levels = 5;
    double field_min_scale = 0.6;
    int init_pos_levels = 5;
    double init_pos_min_frac = 0.25;  // ball band far edge at level 0
    std::vector<std::pair<int, int>> team_sizes = {{1, 1}, {2, 2}, {3, 3}};
};

struct ScenarioConfig {
    std::string name = "Equal";  // Offensive | Equal | Defensive
    // Ball longitudinal spawn band as fractions of field length measured from
    // the blue goal line.
    double ball_band_lo = 0.45;
    double ball_band_hi = 0.55;
    int n_blue = 3;
    int n_red = 3;
    double duration = 600.0;  // cumulative simulated seconds per match

    static ScenarioConfig named(const std::string& name, int n_blue, int n_red);
};

struct PipelineConfig {
    SimConfig sim;
    FieldGeometry field;
    ObservationConfig obs;
    RewardConfig reward;
    NetworkConfig net;
    TrainerConfig trainer;
    ScenarioConfig scenario;
};

// Loads defaults overridden by the (optional) JSON config file. Unknown keys
// are rejected with an error naming the key.
PipelineConfig load_config(const std::string& path);
PipelineConfig default_config();

}  // namespace soccer
