#include "soccer/match.hpp"

#include <sstream>

#include "soccer/bot.hpp"
#include "soccer/physics.hpp"
#include "soccer/runner.hpp"

namespace soccer {

namespace {

std::vector<ActionCommand> side_actions(EnvInstance& env, Team team,
                                        const MatchSide& side,
                                        const ObservationConfig& obs_cfg,
                                        Rng& rng) {
    if (!side.net) return bot_team_actions(env.world, team);
    return policy_team_actions(env, team, obs_cfg, *side.net,
                               side.deterministic, rng);
}

}  // namespace

std::string MatchReport::summary() const {
    std::ostringstream os;
    os << "episodes " << episodes << " over " << sim_time << " s\n"
       << "blue win " << 100.0 * blue_win_rate << "%  red win "
       << 100.0 * red_win_rate << "%  draw " << 100.0 * draw_rate << "%\n"
       << "ownership blue " << 100.0 * blue_ownership_share << "%  red "
       << 100.0 * red_ownership_share << "%\n"
       << "passes/episode blue " << mean_passes_blue << "  red "
       << mean_passes_red << "\n"
       << "losses/episode blue " << mean_losses_blue << "  red "
       << mean_losses_red << "\n"
       << "mean episode duration " << mean_episode_duration << " s";
    return os.str();
}

MatchReport run_match(const PipelineConfig& cfg, const ScenarioConfig& scenario,
                      const MatchSide& blue, const MatchSide& red,
                      uint64_t seed) {
    MatchReport report;
    EnvInstance env;
    env.rng = Rng(seed);
    env.n_blue = scenario.n_blue;
    env.n_red = scenario.n_red;
    Rng action_rng(seed ^ 0xd1b54a32d192ed03ull);

    SpawnSpec spec;
    spec.n_blue = scenario.n_blue;
    spec.n_red = scenario.n_red;
    spec.field_scale = 1.0;
    spec.ball_band_lo = scenario.ball_band_lo;
    spec.ball_band_hi = scenario.ball_band_hi;

    while (report.sim_time < scenario.duration) {
        reset_episode(env, spec, cfg.field, cfg.obs);
        std::optional<Outcome> outcome;
        while (!outcome) {
            std::vector<ActionCommand> actions =
                side_actions(env, Team::Blue, blue, cfg.obs, action_rng);
            std::vector<ActionCommand> red_actions =
                side_actions(env, Team::Red, red, cfg.obs, action_rng);
            actions.insert(actions.end(), red_actions.begin(),
                           red_actions.end());
            push_history(env);
            StepEvents events = step_world(env.world, actions, cfg.sim);
            OwnershipState ownership = assign_ownership(env.world);
            env.tracker.update(env.world, events, ownership, cfg.sim.dt);
            outcome = check_termination(env.world, cfg.sim);
        }
        env.tracker.finish(*outcome);
        const EpisodeStats& st = env.tracker.stats();

        ++report.episodes;
        report.sim_time += st.duration;
        if (*outcome == Outcome::BlueWin) ++report.blue_wins;
        else if (*outcome == Outcome::RedWin) ++report.red_wins;
        else ++report.draws;
        report.episode_stats.push_back(st);
    }

    double n = report.episodes;
    report.blue_win_rate = report.blue_wins / n;
    report.red_win_rate = report.red_wins / n;
    report.draw_rate = report.draws / n;
    double own_blue = 0, own_red = 0, passes_b = 0, passes_r = 0, loss_b = 0,
           loss_r = 0, dur = 0;
    for (const EpisodeStats& st : report.episode_stats) {
        own_blue += st.ownership_time_blue;
        own_red += st.ownership_time_red;
        passes_b += st.passes_blue;
        passes_r += st.passes_red;
        loss_b += st.ownership_losses_blue;
        loss_r += st.ownership_losses_red;
        dur += st.duration;
    }
    report.blue_ownership_share = report.sim_time > 0 ? own_blue / report.sim_time : 0;
    report.red_ownership_share = report.sim_time > 0 ? own_red / report.sim_time : 0;
    report.mean_passes_blue = passes_b / n;
    report.mean_passes_red = passes_r / n;
    report.mean_losses_blue = loss_b / n;
    report.mean_losses_red = loss_r / n;
    report.mean_episode_duration = dur / n;
    return report;
}

}  // namespace soccer
