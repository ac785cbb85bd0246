#include "soccer/rewards.hpp"

#include <cmath>

namespace soccer {

std::vector<double> compute_rewards(const WorldState& world,
                                    const StepEvents& events,
                                    const OwnershipState& ownership,
                                    const RewardConfig& cfg) {
    std::vector<double> rewards;

    double shared = 0.0;
    if (events.goal)
        shared += events.goal_team == Team::Blue ? cfg.score : -cfg.score;
    if (events.ball_out) shared -= cfg.ball_outside;

    double ball2goal = 0.0;
    if (cfg.dense_active) {
        Vec2 goal = world.field.attack_goal_center(Team::Blue);
        Vec2 dir = (goal - world.ball.position).normalized_or_zero();
        ball2goal = cfg.ball2goal_vel * world.ball.velocity.dot(dir);
    }

    bool blue_owns = ownership.owner_team == Team::Blue;

    for (size_t i = 0; i < world.agents.size(); ++i) {
        const AgentState& a = world.agents[i];
        if (!a.active || a.team != Team::Blue) continue;
        double r = shared;
        if (events.collision[i]) r -= cfg.collision;
        if (cfg.dense_active) {
            r += ball2goal;
            Vec2 to_ball = world.ball.position - a.position;
            double dist = to_ball.norm();
            if (!blue_owns && dist > cfg.far_threshold) {
                r += cfg.base2ball_vel *
                     a.linear_velocity.dot(to_ball.normalized_or_zero());
            }
            double bearing = std::atan2(to_ball.y, to_ball.x);
            double theta = wrap_angle(bearing - a.heading);
            double z = theta / cfg.direction_sigma;
            r += cfg.ball_direction * std::exp(-z * z);
        }
        rewards.push_back(r);
    }
    return rewards;
}

void dense_gate(bool milestone_reached, RewardConfig& cfg) {
    if (milestone_reached) cfg.dense_active = false;
}

}  // namespace soccer
