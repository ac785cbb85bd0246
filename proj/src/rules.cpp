#include "soccer/rules.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace soccer {

OwnershipState assign_ownership(const WorldState& world) {
    const double radius = world.field.ownership_radius;
    int best[2] = {-1, -1};
    double best_dist[2] = {std::numeric_limits<double>::infinity(),
                           std::numeric_limits<double>::infinity()};
    bool candidate[2] = {false, false};

    for (size_t i = 0; i < world.agents.size(); ++i) {
        const AgentState& a = world.agents[i];
        if (!a.active) continue;
        double d = (world.ball.position - a.position).norm();
        if (d > radius) continue;
        int t = static_cast<int>(a.team);
        candidate[t] = true;
        if (d < best_dist[t]) {  // ties keep the lowest index (first seen)
            best_dist[t] = d;
            best[t] = static_cast<int>(i);
        }
    }

    OwnershipState out;
    if (candidate[0] != candidate[1]) {  // exactly one team has candidates
        int t = candidate[0] ? 0 : 1;
        out.owner_agent = best[t];
        out.owner_team = static_cast<Team>(t);
    }
    return out;
}

void GameTracker::reset() {
    prev_ownership_ = {};
    last_owner_.reset();
    stats_ = {};
}

std::vector<GameEvent> GameTracker::update(const WorldState& world,
                                           const StepEvents& step_events,
                                           const OwnershipState& ownership,
                                           double dt) {
    std::vector<GameEvent> events;
    double t = world.sim_time;

    if (step_events.goal)
        events.push_back({EventKind::Goal, step_events.goal_team, -1, -1, t});
    if (step_events.ball_out)
        events.push_back({EventKind::BallOut, Team::Blue, -1, -1, t});
    for (size_t i = 0; i < step_events.collision.size(); ++i) {
        if (step_events.collision[i])
            events.push_back({EventKind::Collision, world.agents[i].team,
                              static_cast<int>(i), -1, t});
    }

    if (ownership.owner_agent) {
        int cur = *ownership.owner_agent;
        Team cur_team = *ownership.owner_team;
        if (last_owner_ && prev_ownership_.owner_agent != ownership.owner_agent) {
            auto [prev_agent, prev_team] = *last_owner_;
            if (prev_team == cur_team && prev_agent != cur) {
                events.push_back({EventKind::Pass, cur_team, prev_agent, cur, t});
                (cur_team == Team::Blue ? stats_.passes_blue : stats_.passes_red)++;
            } else if (prev_team != cur_team) {
                events.push_back({EventKind::OwnershipLoss, prev_team, prev_agent, -1, t});
                (prev_team == Team::Blue ? stats_.ownership_losses_blue
                                         : stats_.ownership_losses_red)++;
            }
        }
        last_owner_ = {cur, cur_team};
        (cur_team == Team::Blue ? stats_.ownership_time_blue
                                : stats_.ownership_time_red) += dt;
    }

    for (const auto& a : world.agents) {
        if (a.active && a.team == Team::Blue &&
            (world.ball.position - a.position).norm() <= world.field.kickable_radius) {
            stats_.ball_touches_blue++;
            break;
        }
    }

    prev_ownership_ = ownership;
    stats_.duration = world.sim_time;
    return events;
}

void GameTracker::finish(Outcome outcome) { stats_.outcome = outcome; }

WorldState spawn_episode(const FieldGeometry& nominal, const SpawnSpec& spec,
                         Rng& rng) {
    if (spec.n_blue < 1 || spec.n_red < 1)
        throw std::invalid_argument("spawn_episode: each team needs at least one agent");

    WorldState world;
    world.field = nominal;
    world.field.field_length = nominal.field_length * spec.field_scale;
    world.field.field_width = nominal.field_width * spec.field_scale;
    world.field.goal_width = nominal.goal_width * spec.field_scale;

    const FieldGeometry& f = world.field;
    const double r = f.agent_radius;
    const double margin_y = f.half_width() - r;

    auto overlaps = [&](const Vec2& p) {
        for (const auto& a : world.agents)
            if ((a.position - p).norm() < 2.0 * r + 0.01) return true;
        return false;
    };

    int total = spec.n_blue + spec.n_red;
    for (int i = 0; i < total; ++i) {
        Team team = i < spec.n_blue ? Team::Blue : Team::Red;
        AgentState agent;
        agent.team = team;
        bool placed = false;
        for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
            double x = team == Team::Blue ? rng.uniform(-f.half_length() + r, 0.0)
                                          : rng.uniform(0.0, f.half_length() - r);
            double y = rng.uniform(-margin_y, margin_y);
            if (!overlaps({x, y})) {
                agent.position = {x, y};
                placed = true;
            }
        }
        if (!placed)
            throw std::runtime_error("spawn_episode: field too small for team size");
        agent.heading = rng.angle();
        world.agents.push_back(agent);
    }

    // Ball band measured from the blue goal line toward the red goal.
    double lo = -f.half_length() + spec.ball_band_lo * f.field_length;
    double hi = -f.half_length() + spec.ball_band_hi * f.field_length;
    lo = std::max(lo, -f.half_length() + f.ball_radius);
    hi = std::min(hi, f.half_length() - f.ball_radius);
    bool placed = false;
    for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
        double x = lo < hi ? rng.uniform(lo, hi) : lo;
        double y = rng.uniform(-f.half_width() + f.ball_radius,
                               f.half_width() - f.ball_radius);
        Vec2 p{x, y};
        bool clash = false;
        for (const auto& a : world.agents)
            if ((a.position - p).norm() < r + f.ball_radius + 0.01) clash = true;
        if (!clash) {
            world.ball.position = p;
            placed = true;
        }
    }
    if (!placed)
        throw std::runtime_error("spawn_episode: could not place ball");

    return world;
}

}  // namespace soccer
