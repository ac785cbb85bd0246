#pragma once

#include <span>

#include "soccer/config.hpp"
#include "soccer/world.hpp"

namespace soccer {

// Eq-style remap of the square [-1,1]^2 into the unit disk. Inputs outside the
// square are clamped (asserts in debug builds; out-of-range values indicate an
// upstream sampling bug).
Vec2 remap_unit_disk(double x, double y);

// Inverse of remap_unit_disk, for points inside the unit disk. Used by the
// scripted bot to express a desired post-remap direction as a raw command.
Vec2 remap_unit_disk_inverse(double x, double y);

struct PdGains {
    double kp = 0.0;
    double kd = 0.0;
    double max_output = 0.0;
};

// One-dimensional PD tracking: output = kp * (command - current) - kd * rate,
// clamped to [-max_output, max_output]. `rate` is the tracked quantity's
// derivative from the previous substep.
double pd_track(double command, double current, double rate, const PdGains& g);

// Sets the ball velocity from an (already remapped) ego-frame kick command if
// the ball is inside the agent's kickable area; otherwise leaves the world
// unchanged.
void apply_kick(WorldState& world, int agent_id, const Vec2& kick_remapped,
                const SimConfig& sim);

// Positional projection + impulse resolution for agent-agent, agent-wall and
// ball-agent contacts. Flags agents involved in agent or wall contacts (ball
// contacts excluded).
void resolve_collisions(WorldState& world, const SimConfig& sim,
                        std::vector<uint8_t>& collision_flags);

// Advances one control step: remap -> PD -> substep integration, ball
// friction, collisions, goal / out-of-bounds handling, then kicks. Exactly one
// action per active agent (hard error otherwise).
StepEvents step_world(WorldState& world,
                      std::span<const ActionCommand> actions,
                      const SimConfig& sim);

std::optional<Outcome> check_termination(const WorldState& world,
                                         const SimConfig& sim);

}  // namespace soccer
