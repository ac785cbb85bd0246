#include "soccer/physics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace soccer {

namespace {

double clamp_unit(double v) {
    assert(v >= -1.0 - 1e-9 && v <= 1.0 + 1e-9);
    return std::clamp(v, -1.0, 1.0);
}

double clamp_mag(double v, double mag) { return std::clamp(v, -mag, mag); }

}  // namespace

Vec2 remap_unit_disk(double x, double y) {
    x = clamp_unit(x);
    y = clamp_unit(y);
    return {x * std::sqrt(1.0 - 0.5 * y * y), y * std::sqrt(1.0 - 0.5 * x * x)};
}

Vec2 remap_unit_disk_inverse(double x, double y) {
    // Closed-form inverse of the elliptical square-to-disk map.
    auto inv1d = [](double u, double v) {
        double a = 2.0 + u * u - v * v;
        double p = a + 2.0 * std::sqrt(2.0) * u;
        double q = a - 2.0 * std::sqrt(2.0) * u;
        double r = 0.5 * (std::sqrt(std::max(p, 0.0)) - std::sqrt(std::max(q, 0.0)));
        return std::clamp(r, -1.0, 1.0);
    };
    return {inv1d(x, y), inv1d(y, x)};
}

double pd_track(double command, double current, double rate, const PdGains& g) {
    return clamp_mag(g.kp * (command - current) - g.kd * rate, g.max_output);
}

void apply_kick(WorldState& world, int agent_id, const Vec2& kick_remapped,
                const SimConfig& sim) {
    const AgentState& agent = world.agents[agent_id];
    double dist = (world.ball.position - agent.position).norm();
    if (dist > world.field.kickable_radius) return;
    world.ball.velocity = kick_remapped.rotated(agent.heading) * sim.max_kick_speed;
}

void resolve_collisions(WorldState& world, const SimConfig& sim,
                        std::vector<uint8_t>& flags) {
    FieldGeometry& f = world.field;
    flags.assign(world.agents.size(), 0);

    // Agent-agent
    for (size_t i = 0; i < world.agents.size(); ++i) {
        if (!world.agents[i].active) continue;
        for (size_t j = i + 1; j < world.agents.size(); ++j) {
            if (!world.agents[j].active) continue;
            AgentState& a = world.agents[i];
            AgentState& b = world.agents[j];
            Vec2 d = b.position - a.position;
            double dist = d.norm();
            double min_dist = 2.0 * f.agent_radius;
            if (dist >= min_dist) continue;
            Vec2 n = dist > 1e-9 ? d / dist : Vec2{1.0, 0.0};
            double overlap = min_dist - dist;
            a.position -= n * (0.5 * overlap);
            b.position += n * (0.5 * overlap);
            double v_rel = (b.linear_velocity - a.linear_velocity).dot(n);
            if (v_rel < 0.0) {
                // equal masses, restitution e along the normal
                double jimp = -(1.0 + sim.restitution_agent) * v_rel * 0.5;
                a.linear_velocity -= n * jimp;
                b.linear_velocity += n * jimp;
            }
            flags[i] = 1;
            flags[j] = 1;
        }
    }

    // Agent-wall (wall encloses the field at wall_offset outside the lines)
    double bx = f.half_length() + f.wall_offset - f.agent_radius;
    double by = f.half_width() + f.wall_offset - f.agent_radius;
    for (size_t i = 0; i < world.agents.size(); ++i) {
        AgentState& a = world.agents[i];
        if (!a.active) continue;
        bool hit = false;
        if (a.position.x < -bx || a.position.x > bx) {
            a.position.x = std::clamp(a.position.x, -bx, bx);
            bool outward = (a.position.x > 0) == (a.linear_velocity.x > 0);
            if (outward) a.linear_velocity.x *= -sim.restitution_wall;
            hit = true;
        }
        if (a.position.y < -by || a.position.y > by) {
            a.position.y = std::clamp(a.position.y, -by, by);
            bool outward = (a.position.y > 0) == (a.linear_velocity.y > 0);
            if (outward) a.linear_velocity.y *= -sim.restitution_wall;
            hit = true;
        }
        if (hit) flags[i] = 1;
    }

    // Ball-agent (no flag: ball contacts excluded from the collision penalty)
    for (size_t i = 0; i < world.agents.size(); ++i) {
        AgentState& a = world.agents[i];
        if (!a.active) continue;
        Vec2 d = world.ball.position - a.position;
        double dist = d.norm();
        double min_dist = f.agent_radius + f.ball_radius;
        if (dist >= min_dist) continue;
        Vec2 n = dist > 1e-9 ? d / dist : Vec2{1.0, 0.0};
        world.ball.position = a.position + n * min_dist;
        double v_rel = (world.ball.velocity - a.linear_velocity).dot(n);
        if (v_rel < 0.0) {
            double inv_mass = 1.0 / sim.ball_mass + 1.0 / sim.agent_mass;
            double jimp = -(1.0 + sim.restitution_ball) * v_rel / inv_mass;
            world.ball.velocity += n * (jimp / sim.ball_mass);
            a.linear_velocity -= n * (jimp / sim.agent_mass);
        }
    }
}

StepEvents step_world(WorldState& world, std::span<const ActionCommand> actions,
                      const SimConfig& sim) {
    size_t n_active = 0;
    for (const auto& a : world.agents)
        if (a.active) ++n_active;
    if (actions.size() != n_active)
        throw std::invalid_argument("step_world: one action per active agent required");

    StepEvents events;
    events.collision.assign(world.agents.size(), 0);

    // Remapped commands per agent (indexed like world.agents).
    struct Cmd {
        Vec2 v;        // ego-frame velocity command, m/s
        double omega;  // rad/s
        Vec2 kick;     // remapped kick command
    };
    std::vector<Cmd> cmds(world.agents.size());
    {
        size_t k = 0;
        for (size_t i = 0; i < world.agents.size(); ++i) {
            if (!world.agents[i].active) continue;
            const ActionCommand& ac = actions[k++];
            cmds[i].v = remap_unit_disk(ac.v_x, ac.v_y) * sim.max_speed;
            cmds[i].omega = clamp_mag(clamp_unit(ac.v_theta), 1.0) * sim.max_ang_speed;
            cmds[i].kick = remap_unit_disk(ac.k_x, ac.k_y);
        }
    }

    const double h = sim.dt / sim.substeps;
    const double inertia = sim.agent_inertia(world.field.agent_radius);
    const double ball_decay =
        std::exp(-std::log(2.0) * h / sim.ball_friction_half_life);
    const PdGains lin_gains{sim.pd_kp, sim.pd_kd, sim.max_force};
    const PdGains ang_gains{sim.pd_kp_ang, sim.pd_kd_ang, sim.max_torque};

    std::vector<Vec2> lin_accel(world.agents.size());
    std::vector<double> ang_accel(world.agents.size(), 0.0);
    std::vector<uint8_t> sub_flags;

    for (int s = 0; s < sim.substeps && !world.score_event; ++s) {
        // PD tracking + semi-implicit Euler for agents
        for (size_t i = 0; i < world.agents.size(); ++i) {
            AgentState& a = world.agents[i];
            if (!a.active) continue;
            Vec2 v_cmd = cmds[i].v.rotated(a.heading);
            Vec2 force{pd_track(v_cmd.x, a.linear_velocity.x, lin_accel[i].x, lin_gains),
                       pd_track(v_cmd.y, a.linear_velocity.y, lin_accel[i].y, lin_gains)};
            double fn = force.norm();
            if (fn > sim.max_force) force *= sim.max_force / fn;
            double torque =
                pd_track(cmds[i].omega, a.angular_velocity, ang_accel[i], ang_gains);
            lin_accel[i] = force / sim.agent_mass;
            ang_accel[i] = torque / inertia;
            a.linear_velocity += lin_accel[i] * h;
            a.angular_velocity += ang_accel[i] * h;
            a.position += a.linear_velocity * h;
            a.heading = wrap_angle(a.heading + a.angular_velocity * h);
        }

        // Ball friction + integration
        world.ball.velocity *= ball_decay;
        world.ball.position += world.ball.velocity * h;

        resolve_collisions(world, sim, sub_flags);
        for (size_t i = 0; i < sub_flags.size(); ++i)
            if (sub_flags[i]) events.collision[i] = 1;

        // Goal / out-of-bounds
        const FieldGeometry& f = world.field;
        Vec2 bp = world.ball.position;
        if (std::abs(bp.x) > f.half_length() || std::abs(bp.y) > f.half_width()) {
            bool in_aperture = std::abs(bp.y) <= f.goal_half_width();
            if (bp.x > f.half_length() && in_aperture) {
                world.score_event = ScoreEvent::BlueGoal;
                events.goal = true;
                events.goal_team = Team::Blue;
            } else if (bp.x < -f.half_length() && in_aperture) {
                world.score_event = ScoreEvent::RedGoal;
                events.goal = true;
                events.goal_team = Team::Red;
            } else {
                // Respawn on the border at the exit point, velocity zeroed.
                Vec2 exit{std::clamp(bp.x, -f.half_length(), f.half_length()),
                          std::clamp(bp.y, -f.half_width(), f.half_width())};
                world.ball.position = exit;
                world.ball.velocity = {0.0, 0.0};
                events.ball_out = true;
                events.ball_exit_point = exit;
            }
        }
    }

    // Kicks take effect only when the ball is inside the kicker's area K.
    if (!world.score_event) {
        for (size_t i = 0; i < world.agents.size(); ++i) {
            if (!world.agents[i].active) continue;
            apply_kick(world, static_cast<int>(i), cmds[i].kick, sim);
        }
    }

    world.sim_time += sim.dt;
    world.episode_step += 1;
    return events;
}

std::optional<Outcome> check_termination(const WorldState& world,
                                         const SimConfig& sim) {
    if (world.score_event) {
        return *world.score_event == ScoreEvent::BlueGoal ? Outcome::BlueWin
                                                          : Outcome::RedWin;
    }
    if (world.sim_time >= sim.episode_limit) return Outcome::Timeout;
    return std::nullopt;
}

}  // namespace soccer
