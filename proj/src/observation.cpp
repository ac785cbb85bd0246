#include "soccer/observation.hpp"

#include <algorithm>
#include <cmath>

namespace soccer {

void HistoryBuffer::reset(size_t n_agents, int history_len) {
    depth_ = std::max(history_len - 1, 1);
    n_agents_ = n_agents;
    count_ = 0;
    head_ = 0;
    slots_.assign(n_agents_ * depth_, {Vec2{}, 0.0, false});
}

void HistoryBuffer::push(const WorldState& world) {
    for (size_t i = 0; i < n_agents_ && i < world.agents.size(); ++i) {
        const AgentState& a = world.agents[i];
        slots_[head_ * n_agents_ + i] = {a.position, a.heading, true};
    }
    head_ = (head_ + 1) % depth_;
    ++count_;
}

HistoryBuffer::PastPose HistoryBuffer::past(int agent, int k) const {
    if (k < 1 || k > depth_ || k > count_) return {Vec2{}, 0.0, false};
    int idx = (head_ - k + depth_ * 2) % depth_;
    return slots_[idx * n_agents_ + agent];
}

void inject_noise(std::span<double> values, double magnitude, Rng& rng) {
    if (magnitude <= 0.0) return;
    for (double& v : values) v += rng.uniform(-magnitude, magnitude);
}

namespace {

// 4 numbers: relative position in the ego frame (normalized) and the expanded
// relative heading.
void write_relative_pose(double* out, const Vec2& pos, double heading,
                         const AgentState& ego, const FieldGeometry& f) {
    Vec2 rel = (pos - ego.position).rotated(-ego.heading);
    double dth = heading - ego.heading;
    out[0] = rel.x / f.half_length();
    out[1] = rel.y / f.half_width();
    out[2] = std::sin(dth);
    out[3] = std::cos(dth);
}

}  // namespace

ObservationBundle build_observation(const WorldState& world, int agent_id,
                                    const HistoryBuffer& history,
                                    const ObservationConfig& cfg, ObsRole role,
                                    Rng& rng) {
    const FieldGeometry& f = world.field;
    const AgentState& ego = world.agents[agent_id];
    const int ed = cfg.entity_dim();

    ObservationBundle obs;
    obs.local.assign(cfg.local_dim(), 0.0);
    obs.teammates.assign(static_cast<size_t>(cfg.n_max_neighbors) * ed, 0.0);
    obs.opponents.assign(static_cast<size_t>(cfg.n_max_neighbors) * ed, 0.0);
    obs.teammate_mask.assign(cfg.n_max_neighbors, 0);
    obs.opponent_mask.assign(cfg.n_max_neighbors, 0);

    // Local observations
    double* L = obs.local.data();
    L[0] = ego.position.x / f.half_length();
    L[1] = ego.position.y / f.half_width();
    L[2] = std::sin(ego.heading);
    L[3] = std::cos(ego.heading);
    Vec2 v_ego = ego.linear_velocity.rotated(-ego.heading);
    L[4] = v_ego.x;
    L[5] = v_ego.y;
    L[6] = ego.angular_velocity;
    L[7] = world.ball.position.x / f.half_length();
    L[8] = world.ball.position.y / f.half_width();
    Vec2 v_ball = world.ball.velocity.rotated(-ego.heading);
    L[9] = v_ball.x;
    L[10] = v_ball.y;
    double nhl = 0.5 * cfg.norm_length, nhw = 0.5 * cfg.norm_width;
    L[11] = f.half_length() / nhl;
    L[12] = f.half_width() / nhw;
    L[13] = f.goal_half_width() / nhw;
    L[14] = (f.half_length() + f.wall_offset) / nhl;
    L[15] = (f.half_width() + f.wall_offset) / nhw;
    int n_team = world.count_active(ego.team);
    int n_opp = world.count_active(other_team(ego.team));
    L[16] = std::min(n_team - 1, cfg.count_clamp) / 3.0;
    L[17] = std::min(n_opp, cfg.count_clamp) / 3.0;

    // Neighbor rows: the n_max closest active agents per type, by current
    // distance to the ego (stable tie-break on index).
    struct Neighbor {
        int id;
        double dist;
    };
    std::vector<Neighbor> team, opp;
    for (size_t i = 0; i < world.agents.size(); ++i) {
        if (static_cast<int>(i) == agent_id || !world.agents[i].active) continue;
        double d = (world.agents[i].position - ego.position).norm();
        (world.agents[i].team == ego.team ? team : opp)
            .push_back({static_cast<int>(i), d});
    }
    auto by_dist = [](const Neighbor& a, const Neighbor& b) {
        return a.dist < b.dist || (a.dist == b.dist && a.id < b.id);
    };
    std::stable_sort(team.begin(), team.end(), by_dist);
    std::stable_sort(opp.begin(), opp.end(), by_dist);

    auto fill = [&](const std::vector<Neighbor>& src, std::vector<double>& dst,
                    std::vector<uint8_t>& mask) {
        int n = std::min<int>(cfg.n_max_neighbors, static_cast<int>(src.size()));
        for (int r = 0; r < n; ++r) {
            const AgentState& nb = world.agents[src[r].id];
            double* row = dst.data() + static_cast<size_t>(r) * ed;
            write_relative_pose(row, nb.position, nb.heading, ego, f);
            for (int k = 1; k < cfg.history_len; ++k) {
                auto past = history.past(src[r].id, k);
                if (past.valid)
                    write_relative_pose(row + 4 * k, past.position, past.heading,
                                        ego, f);
                // invalid history stays zero-padded
            }
            mask[r] = 1;
        }
    };
    fill(team, obs.teammates, obs.teammate_mask);
    fill(opp, obs.opponents, obs.opponent_mask);

    if (role == ObsRole::Actor) {
        inject_noise(std::span(obs.local).subspan(0, 4), cfg.noise_pose, rng);
        inject_noise(std::span(obs.local).subspan(4, 3), cfg.noise_velocity, rng);
        inject_noise(std::span(obs.local).subspan(7, 2), cfg.noise_pose, rng);
        inject_noise(std::span(obs.local).subspan(9, 2), cfg.noise_velocity, rng);
        for (int r = 0; r < cfg.n_max_neighbors; ++r) {
            if (obs.teammate_mask[r])
                inject_noise(std::span(obs.teammates).subspan(r * ed, ed),
                             cfg.noise_pose, rng);
            if (obs.opponent_mask[r])
                inject_noise(std::span(obs.opponents).subspan(r * ed, ed),
                             cfg.noise_pose, rng);
        }
    }

    return obs;
}

}  // namespace soccer
