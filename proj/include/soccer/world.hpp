#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "soccer/vec2.hpp"

namespace soccer {

enum class Team : uint8_t { Blue = 0, Red = 1 };

inline Team other_team(Team t) { return t == Team::Blue ? Team::Red : Team::Blue; }

// Blue defends the goal at x = -L/2 and attacks the goal at x = +L/2.
struct FieldGeometry {
    double field_length = 9.0;
    double field_width = 6.0;
    double goal_width = 1.5;
    double wall_offset = 0.5;     // enclosing wall outside the field lines
    double kickable_radius = 0.3; // kick area K
    double ownership_radius = 0.25;
    double agent_radius = 0.15;
    double ball_radius = 0.05;

    double half_length() const { return 0.5 * field_length; }
    double half_width() const { return 0.5 * field_width; }
    double goal_half_width() const { return 0.5 * goal_width; }

    // Goal center the given team attacks.
    Vec2 attack_goal_center(Team t) const {
        return {t == Team::Blue ? half_length() : -half_length(), 0.0};
    }
    Vec2 defend_goal_center(Team t) const {
        return attack_goal_center(other_team(t));
    }

    bool valid() const {
        return field_length > 0 && field_width > 0 && goal_width > 0 &&
               wall_offset > 0 && kickable_radius > 0 && agent_radius > 0 &&
               ball_radius > 0 && goal_width < field_width &&
               ownership_radius > ball_radius;
    }
};

struct AgentState {
    Vec2 position;
    double heading = 0.0;  // (-pi, pi]
    Vec2 linear_velocity;
    double angular_velocity = 0.0;
    Team team = Team::Blue;
    bool active = true;
};

struct BallState {
    Vec2 position;
    Vec2 velocity;
};

// Per-agent action, all components in [-1, 1] before the unit-disk remap.
struct ActionCommand {
    double v_x = 0.0;
    double v_y = 0.0;
    double v_theta = 0.0;
    double k_x = 0.0;
    double k_y = 0.0;

    std::array<double, 5> as_array() const { return {v_x, v_y, v_theta, k_x, k_y}; }
    static ActionCommand from_array(const std::array<double, 5>& a) {
        return {a[0], a[1], a[2], a[3], a[4]};
    }
};

enum class ScoreEvent : uint8_t { BlueGoal, RedGoal };

struct WorldState {
    FieldGeometry field;
    std::vector<AgentState> agents;  // both teams, blue first by convention
    BallState ball;
    double sim_time = 0.0;
    int episode_step = 0;
    std::optional<ScoreEvent> score_event;
    uint64_t rng_stream = 0;

    int count_active(Team t) const {
        int n = 0;
        for (const auto& a : agents)
            if (a.active && a.team == t) ++n;
        return n;
    }
};

struct StepEvents {
    bool goal = false;
    Team goal_team = Team::Blue;       // scoring team, valid when goal
    bool ball_out = false;
    Vec2 ball_exit_point;              // valid when ball_out
    std::vector<uint8_t> collision;    // per agent, ball contacts excluded
};

enum class Outcome : uint8_t { BlueWin, RedWin, Timeout };

}  // namespace soccer
