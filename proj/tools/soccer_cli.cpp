#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "soccer/checkpoint.hpp"
#include "soccer/config.hpp"
#include "soccer/heatmap.hpp"
#include "soccer/match.hpp"
#include "soccer/physics.hpp"
#include "soccer/runner.hpp"
#include "soccer/trainer.hpp"
#include "soccer/trajectory.hpp"

namespace {

using namespace soccer;

struct SideSpec {
    std::string checkpoint;  // empty -> scripted bot
};

// Loads a side's policy; nullopt net means the scripted bot plays.
struct LoadedSide {
    std::optional<ActorCritic> net;
    MatchSide side() const { return {net ? &*net : nullptr, true}; }
};

LoadedSide load_side(const std::string& checkpoint, const PipelineConfig& cfg) {
    LoadedSide s;
    if (!checkpoint.empty() && checkpoint != "bot")
        s.net = load_policy_checkpoint(checkpoint, cfg).net;
    return s;
}

int cmd_train(const std::string& config_path, uint64_t seed, int iterations,
              const std::string& out_dir, const std::string& resume) {
    PipelineConfig cfg = load_config(config_path);
    if (iterations > 0) cfg.trainer.total_iterations = iterations;
    std::filesystem::create_directories(out_dir);

    Trainer trainer(cfg, seed);
    if (!resume.empty()) trainer.load(resume);

    std::ofstream metrics(out_dir + "/metrics.csv",
                          resume.empty() ? std::ios::trunc : std::ios::app);
    if (resume.empty()) metrics << Trainer::metrics_csv_header() << '\n';

    while (trainer.iteration() < cfg.trainer.total_iterations) {
        IterationMetrics m = trainer.iterate();
        metrics << Trainer::metrics_csv_row(m) << '\n';
        metrics.flush();
        if (m.iteration % 10 == 0 || m.promoted) {
            std::cout << "iter " << m.iteration << "  winrate "
                      << m.winrate_avg << "  entropy " << m.ppo.entropy
                      << "  pool " << m.pool_size
                      << (m.dense_active ? "" : "  [dense off]")
                      << (m.promoted ? "  [promoted]" : "") << std::endl;
        }
        if (m.iteration % cfg.trainer.checkpoint_every == 0 ||
            m.iteration == cfg.trainer.total_iterations) {
            trainer.save(out_dir + "/trainer_latest.ckpt");
            save_policy_checkpoint(out_dir + "/policy_latest.ckpt",
                                   trainer.net(),
                                   trainer.reward_config().dense_active);
        }
    }
    trainer.save(out_dir + "/trainer_latest.ckpt");
    save_policy_checkpoint(out_dir + "/policy_latest.ckpt", trainer.net(),
                           trainer.reward_config().dense_active);
    std::cout << "training finished at iteration " << trainer.iteration()
              << "; checkpoints in " << out_dir << std::endl;
    return 0;
}

ScenarioConfig make_scenario(const PipelineConfig& cfg, std::string name,
                             int n_blue, int n_red, double duration) {
    ScenarioConfig sc = name.empty() ? cfg.scenario
                                     : ScenarioConfig::named(name, n_blue, n_red);
    if (!name.empty()) {
        sc.n_blue = n_blue;
        sc.n_red = n_red;
    }
    if (duration > 0) sc.duration = duration;
    return sc;
}

int cmd_eval(const std::string& config_path, const std::string& blue_ckpt,
             const std::string& red_ckpt, const std::string& scenario_name,
             int n_blue, int n_red, double duration, uint64_t seed) {
    PipelineConfig cfg = load_config(config_path);
    ScenarioConfig sc = make_scenario(cfg, scenario_name, n_blue, n_red, duration);
    LoadedSide blue = load_side(blue_ckpt, cfg);
    LoadedSide red = load_side(red_ckpt, cfg);
    MatchReport report = run_match(cfg, sc, blue.side(), red.side(), seed);
    std::cout << "scenario " << sc.name << " (" << sc.n_blue << "v" << sc.n_red
              << ")\n"
              << report.summary() << std::endl;
    return 0;
}

int cmd_heatmap(const std::string& config_path, const std::string& ckpt,
                const std::string& out_path, int resolution,
                const std::string& scenario_name, int n_blue, int n_red,
                uint64_t seed, const std::string& sweep, int agent_id,
                int value_agent) {
    PipelineConfig cfg = load_config(config_path);
    ScenarioConfig sc = make_scenario(cfg, scenario_name, n_blue, n_red, 0);
    PolicyCheckpoint policy = load_policy_checkpoint(ckpt, cfg);

    Rng rng(seed);
    SpawnSpec spec{sc.n_blue, sc.n_red, 1.0, sc.ball_band_lo, sc.ball_band_hi};
    WorldState frozen = spawn_episode(cfg.field, spec, rng);

    HeatmapSpec hspec;
    hspec.resolution = resolution;
    hspec.sweep = sweep == "agent" ? HeatmapSweep::Agent : HeatmapSweep::Ball;
    hspec.agent_id = agent_id;
    hspec.value_agent = value_agent;
    Heatmap map = value_heatmap(frozen, hspec, policy.net, cfg.obs);

    std::ofstream os(out_path);
    if (!os) {
        std::cerr << "cannot open " << out_path << std::endl;
        return 1;
    }
    os << map.to_csv();
    std::cout << "wrote " << resolution << "x" << resolution << " heatmap to "
              << out_path << std::endl;
    return 0;
}

int cmd_record(const std::string& config_path, const std::string& blue_ckpt,
               const std::string& red_ckpt, const std::string& scenario_name,
               int n_blue, int n_red, uint64_t seed,
               const std::string& out_path) {
    PipelineConfig cfg = load_config(config_path);
    ScenarioConfig sc = make_scenario(cfg, scenario_name, n_blue, n_red, 0);
    LoadedSide blue = load_side(blue_ckpt, cfg);
    LoadedSide red = load_side(red_ckpt, cfg);

    EnvInstance env;
    env.rng = Rng(seed);
    Rng action_rng(seed ^ 0xd1b54a32d192ed03ull);
    SpawnSpec spec{sc.n_blue, sc.n_red, 1.0, sc.ball_band_lo, sc.ball_band_hi};
    reset_episode(env, spec, cfg.field, cfg.obs);

    TrajectoryWriter writer(out_path, env.world, cfg.sim);
    std::optional<Outcome> outcome;
    while (!outcome) {
        std::vector<ActionCommand> actions =
            blue.net ? policy_team_actions(env, Team::Blue, cfg.obs, *blue.net,
                                           true, action_rng)
                     : bot_team_actions(env.world, Team::Blue);
        std::vector<ActionCommand> red_actions =
            red.net ? policy_team_actions(env, Team::Red, cfg.obs, *red.net,
                                          true, action_rng)
                    : bot_team_actions(env.world, Team::Red);
        actions.insert(actions.end(), red_actions.begin(), red_actions.end());
        push_history(env);
        StepEvents events = step_world(env.world, actions, cfg.sim);
        OwnershipState ownership = assign_ownership(env.world);
        env.tracker.update(env.world, events, ownership, cfg.sim.dt);
        writer.record_step(actions, env.world, events, ownership);
        outcome = check_termination(env.world, cfg.sim);
    }
    writer.finish(*outcome);
    std::cout << "recorded episode ("
              << (*outcome == Outcome::BlueWin  ? "blue win"
                  : *outcome == Outcome::RedWin ? "red win"
                                                : "timeout")
              << ") to " << out_path << std::endl;
    return 0;
}

int cmd_replay(const std::string& path) {
    ReplayResult result = replay_trajectory(path);
    if (!result.ok) {
        std::cerr << "replay FAILED after " << result.steps
                  << " steps: " << result.error << std::endl;
        return 1;
    }
    std::cout << "replay OK, " << result.steps
              << " steps matched bit-for-bit" << std::endl;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decentralized multi-agent soccer: training and evaluation"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "runs", resume, blue_ckpt, red_ckpt;
    std::string scenario_name, out_path, sweep = "ball", replay_path;
    uint64_t seed = 1;
    int iterations = 0, n_blue = 3, n_red = 3, resolution = 80;
    int agent_id = 0, value_agent = 0;
    double duration = 0;

    auto* train = app.add_subcommand("train", "run PPO self-play training");
    train->add_option("--config", config_path, "JSON config file");
    train->add_option("--seed", seed, "training seed");
    train->add_option("--iterations", iterations,
                      "override trainer.total_iterations");
    train->add_option("--out", out_dir, "output directory");
    train->add_option("--resume", resume, "trainer checkpoint to resume from");

    auto* eval = app.add_subcommand("eval", "evaluate checkpoints in matches");
    eval->add_option("--config", config_path, "JSON config file");
    eval->add_option("--blue", blue_ckpt, "blue policy checkpoint, or 'bot'");
    eval->add_option("--red", red_ckpt, "red policy checkpoint, or 'bot'");
    eval->add_option("--scenario", scenario_name,
                     "Offensive | Equal | Defensive");
    eval->add_option("--n-blue", n_blue, "blue team size");
    eval->add_option("--n-red", n_red, "red team size");
    eval->add_option("--duration", duration, "match duration in sim seconds");
    eval->add_option("--seed", seed, "evaluation seed");

    auto* heatmap = app.add_subcommand("heatmap", "critic value heat map");
    heatmap->add_option("--config", config_path, "JSON config file");
    heatmap->add_option("--policy", blue_ckpt, "policy checkpoint")->required();
    heatmap->add_option("--out", out_path, "output CSV path")->required();
    heatmap->add_option("--resolution", resolution, "cells per axis");
    heatmap->add_option("--scenario", scenario_name,
                        "Offensive | Equal | Defensive");
    heatmap->add_option("--n-blue", n_blue, "blue team size");
    heatmap->add_option("--n-red", n_red, "red team size");
    heatmap->add_option("--seed", seed, "spawn seed for the frozen world");
    heatmap->add_option("--sweep", sweep, "ball | agent");
    heatmap->add_option("--agent", agent_id, "swept agent id (sweep=agent)");
    heatmap->add_option("--value-agent", value_agent,
                        "agent whose critic view is plotted");

    auto* record = app.add_subcommand("record", "record one episode as JSONL");
    record->add_option("--config", config_path, "JSON config file");
    record->add_option("--blue", blue_ckpt, "blue policy checkpoint, or 'bot'");
    record->add_option("--red", red_ckpt, "red policy checkpoint, or 'bot'");
    record->add_option("--scenario", scenario_name,
                       "Offensive | Equal | Defensive");
    record->add_option("--n-blue", n_blue, "blue team size");
    record->add_option("--n-red", n_red, "red team size");
    record->add_option("--seed", seed, "episode seed");
    record->add_option("--out", out_path, "output JSONL path")->required();

    auto* replay = app.add_subcommand("replay", "verify a recorded episode");
    replay->add_option("file", replay_path, "trajectory JSONL")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (train->parsed())
            return cmd_train(config_path, seed, iterations, out_dir, resume);
        if (eval->parsed())
            return cmd_eval(config_path, blue_ckpt, red_ckpt, scenario_name,
                            n_blue, n_red, duration, seed);
        if (heatmap->parsed())
            return cmd_heatmap(config_path, blue_ckpt, out_path, resolution,
                               scenario_name, n_blue, n_red, seed, sweep,
                               agent_id, value_agent);
        if (record->parsed())
            return cmd_record(config_path, blue_ckpt, red_ckpt, scenario_name,
                              n_blue, n_red, seed, out_path);
        if (replay->parsed()) return cmd_replay(replay_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 0;
}
