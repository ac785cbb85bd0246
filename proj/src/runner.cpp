#include "soccer/runner.hpp"

namespace soccer {

WorldState mirrored_world(const WorldState& world) {
    WorldState m = world;
    for (auto& a : m.agents) {
        a.position = -a.position;
        a.heading = wrap_angle(a.heading + M_PI);
        a.linear_velocity = -a.linear_velocity;
        a.team = other_team(a.team);
    }
    m.ball.position = -m.ball.position;
    m.ball.velocity = -m.ball.velocity;
    if (m.score_event) {
        m.score_event = *m.score_event == ScoreEvent::BlueGoal
                            ? ScoreEvent::RedGoal
                            : ScoreEvent::BlueGoal;
    }
    return m;
}

void reset_episode(EnvInstance& env, const SpawnSpec& spec,
                   const FieldGeometry& nominal_field,
                   const ObservationConfig& obs_cfg) {
    env.world = spawn_episode(nominal_field, spec, env.rng);
    env.n_blue = spec.n_blue;
    env.n_red = spec.n_red;
    env.history.reset(env.world.agents.size(), obs_cfg.history_len);
    env.mirrored_history.reset(env.world.agents.size(), obs_cfg.history_len);
    env.tracker.reset();
}

void push_history(EnvInstance& env) {
    env.history.push(env.world);
    env.mirrored_history.push(mirrored_world(env.world));
}

std::vector<ActionCommand> policy_team_actions(const EnvInstance& env, Team team,
                                               const ObservationConfig& obs_cfg,
                                               const ActorCritic& net,
                                               bool deterministic, Rng& rng) {
    const bool mirror = team == Team::Red;
    WorldState view = mirror ? mirrored_world(env.world) : env.world;
    const HistoryBuffer& hist = mirror ? env.mirrored_history : env.history;

    std::vector<ActionCommand> out;
    for (size_t i = 0; i < view.agents.size(); ++i) {
        // In the mirrored view the controlled team reads as blue.
        if (!view.agents[i].active || view.agents[i].team != Team::Blue) continue;
        ObservationBundle obs = build_observation(
            view, static_cast<int>(i), hist, obs_cfg, ObsRole::Actor, rng);
        ActionDist dist = policy_forward(obs, net, nullptr);
        SampledAction act =
            deterministic ? mode_action(dist) : sample_action(dist, rng);
        out.push_back(ActionCommand::from_array(act.action));
    }
    return out;
}

std::vector<ActionCommand> adversary_actions(EnvInstance& env,
                                             const ActorCritic* snapshot,
                                             const ObservationConfig& obs_cfg) {
    if (!snapshot) return bot_team_actions(env.world, Team::Red);
    return policy_team_actions(env, Team::Red, obs_cfg, *snapshot,
                               /*deterministic=*/true, env.rng);
}

}  // namespace soccer
