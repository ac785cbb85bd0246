#include "soccer/bot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "soccer/physics.hpp"

namespace soccer {

namespace {

constexpr double kKeeperDepth = 0.3;      // m in front of the own goal line
constexpr double kDefenderStandoff = 0.4; // fraction of ball-to-goal distance
constexpr double kHeadingGain = 2.0;
constexpr double kPositionGain = 3.0;

int closest_to(const WorldState& world, Team team, const Vec2& point,
               const std::vector<int>& exclude) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < world.agents.size(); ++i) {
        const AgentState& a = world.agents[i];
        if (!a.active || a.team != team) continue;
        if (std::find(exclude.begin(), exclude.end(), static_cast<int>(i)) !=
            exclude.end())
            continue;
        double d = (a.position - point).norm();
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(i);
        }
    }
    return best;
}

// Builds a raw command whose post-remap translation matches the desired
// ego-frame velocity (norm <= 1) and whose kick aims at kick_target.
ActionCommand drive(const WorldState& world, int agent_id, const Vec2& vel_world,
                    const Vec2& face_point, const Vec2& kick_target) {
    const AgentState& a = world.agents[agent_id];
    Vec2 v_ego = vel_world.rotated(-a.heading);
    double n = v_ego.norm();
    if (n > 1.0) v_ego *= 1.0 / n;
    Vec2 v_cmd = remap_unit_disk_inverse(v_ego.x, v_ego.y);

    Vec2 to_face = face_point - a.position;
    double bearing = std::atan2(to_face.y, to_face.x);
    double v_theta = std::clamp(kHeadingGain * wrap_angle(bearing - a.heading),
                                -1.0, 1.0);

    Vec2 kick_ego =
        (kick_target - a.position).normalized_or_zero().rotated(-a.heading);
    Vec2 k_cmd = remap_unit_disk_inverse(kick_ego.x, kick_ego.y);

    return {v_cmd.x, v_cmd.y, v_theta, k_cmd.x, k_cmd.y};
}

}  // namespace

BotRoleAssignment assign_bot_roles(const WorldState& world, Team team) {
    BotRoleAssignment roles;
    roles.attacker = closest_to(world, team, world.ball.position, {});
    roles.goalkeeper = closest_to(world, team, world.field.defend_goal_center(team),
                                  {roles.attacker});
    for (size_t i = 0; i < world.agents.size(); ++i) {
        const AgentState& a = world.agents[i];
        if (!a.active || a.team != team) continue;
        int id = static_cast<int>(i);
        if (id != roles.attacker && id != roles.goalkeeper)
            roles.defenders.push_back(id);
    }
    return roles;
}

ActionCommand bot_act(const WorldState& world, int agent_id) {
    const AgentState& agent = world.agents[agent_id];
    Team team = agent.team;
    BotRoleAssignment roles = assign_bot_roles(world, team);
    const Vec2 ball = world.ball.position;
    const Vec2 goal_opp = world.field.attack_goal_center(team);
    const Vec2 goal_own = world.field.defend_goal_center(team);

    if (agent_id == roles.attacker) {
        Vec2 dir = (ball - agent.position).normalized_or_zero();
        return drive(world, agent_id, dir, ball, goal_opp);
    }
    Vec2 target;
    if (agent_id == roles.goalkeeper) {
        Vec2 out = (ball - goal_own).normalized_or_zero();
        target = goal_own + out * kKeeperDepth;
    } else {
        target = ball + (goal_own - ball) * kDefenderStandoff;
    }
    Vec2 vel = (target - agent.position) * kPositionGain;
    return drive(world, agent_id, vel, ball, goal_opp);
}

std::vector<ActionCommand> bot_team_actions(const WorldState& world, Team team) {
    std::vector<ActionCommand> out;
    for (size_t i = 0; i < world.agents.size(); ++i) {
        if (world.agents[i].active && world.agents[i].team == team)
            out.push_back(bot_act(world, static_cast<int>(i)));
    }
    return out;
}

}  // namespace soccer
