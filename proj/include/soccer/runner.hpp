#pragma once

#include "soccer/bot.hpp"
#include "soccer/config.hpp"
#include "soccer/network.hpp"
#include "soccer/observation.hpp"
#include "soccer/physics.hpp"
#include "soccer/rules.hpp"
#include "soccer/selfplay.hpp"

namespace soccer {

// The policy is trained from the blue perspective (attacking +x). To run it
// on the red team the world is rotated by pi about the center with team
// labels swapped; ego-frame action commands carry over unchanged.
WorldState mirrored_world(const WorldState& world);

// One game instance with everything episode-scoped attached.
struct EnvInstance {
    WorldState world;
    HistoryBuffer history;
    HistoryBuffer mirrored_history;  // red-perspective copy, kept in lockstep
    GameTracker tracker;
    EnvCurriculum curriculum;
    int adversary_id = kBotAdversaryId;
    Rng rng;
    int n_blue = 1;
    int n_red = 1;
};

// Spawns a fresh episode into the instance under the given spawn spec and
// resets history/trackers.
void reset_episode(EnvInstance& env, const SpawnSpec& spec,
                   const FieldGeometry& nominal_field,
                   const ObservationConfig& obs_cfg);

// Records the pre-step world into the history buffers. Call once per control
// step, after action selection and before step_world.
void push_history(EnvInstance& env);

// Policy-driven actions for one team (active agents, index order). Red teams
// see the mirrored world. Deterministic mode returns the distribution mode.
std::vector<ActionCommand> policy_team_actions(const EnvInstance& env, Team team,
                                               const ObservationConfig& obs_cfg,
                                               const ActorCritic& net,
                                               bool deterministic, Rng& rng);

// Adversary actions for the red team: scripted bot when snapshot is null,
// otherwise the frozen policy in deterministic inference mode.
std::vector<ActionCommand> adversary_actions(EnvInstance& env,
                                             const ActorCritic* snapshot,
                                             const ObservationConfig& obs_cfg);

}  // namespace soccer
