#pragma once

#include <vector>

#include "soccer/world.hpp"

namespace soccer {

// Greedy role partition: the team's closest agent to the ball attacks, the
// closest remaining agent to the own goal keeps, the rest defend. Ties go to
// the lowest agent index.
struct BotRoleAssignment {
    int attacker = -1;
    int goalkeeper = -1;  // -1 on 1-player teams
    std::vector<int> defenders;
};

BotRoleAssignment assign_bot_roles(const WorldState& world, Team team);

// Heuristic scripted adversary. Attacker chases the ball and kicks full power
// toward the opponent goal once kickable; keeper holds a point short of the
// own goal on the ball line; defenders hold the ball-goal line at a standoff.
// Deterministic in the world state.
ActionCommand bot_act(const WorldState& world, int agent_id);

// Commands for all active agents of a team, in agent index order.
std::vector<ActionCommand> bot_team_actions(const WorldState& world, Team team);

}  // namespace soccer
