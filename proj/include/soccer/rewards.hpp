#pragma once

#include <vector>

#include "soccer/config.hpp"
#include "soccer/rules.hpp"
#include "soccer/world.hpp"

namespace soccer {

// Per-step rewards for the trainee (blue) team, indexed by blue agent order
// (agents vector order restricted to active blue agents).
//
// Sparse terms: shared goal score, shared ball-out penalty, individual
// collision penalty. Dense terms (only while cfg.dense_active): shared signed
// ball velocity toward the opponent goal, individual signed agent velocity
// toward the ball when no blue agent owns it and the ball is far, and an
// individual heading-alignment bell around the ball bearing.
std::vector<double> compute_rewards(const WorldState& world,
                                    const StepEvents& events,
                                    const OwnershipState& ownership,
                                    const RewardConfig& cfg);

// Permanently disables the dense terms the first time the milestone is hit.
void dense_gate(bool milestone_reached, RewardConfig& cfg);

}  // namespace soccer
