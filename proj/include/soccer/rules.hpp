#pragma once

#include <optional>
#include <vector>

#include "soccer/config.hpp"
#include "soccer/rng.hpp"
#include "soccer/world.hpp"

namespace soccer {

struct OwnershipState {
    std::optional<int> owner_agent;
    std::optional<Team> owner_team;

    bool operator==(const OwnershipState&) const = default;
};

// Ownership rule: an agent owns the ball iff it is within ownership_radius,
// the closest of its team among those candidates, and no opponent is within
// ownership_radius. Equidistant ties go to the lowest agent index.
OwnershipState assign_ownership(const WorldState& world);

enum class EventKind : uint8_t { Goal, BallOut, Pass, OwnershipLoss, Collision };

struct GameEvent {
    EventKind kind;
    Team team = Team::Blue;
    int agent_a = -1;  // pass: sender / collision, loss: subject agent
    int agent_b = -1;  // pass: receiver
    double sim_time = 0.0;
};

struct EpisodeStats {
    std::optional<Outcome> outcome;
    double ownership_time_blue = 0.0;
    double ownership_time_red = 0.0;
    int passes_blue = 0;
    int passes_red = 0;
    int ownership_losses_blue = 0;
    int ownership_losses_red = 0;
    int ball_touches_blue = 0;  // control steps with ball inside a blue K
    double duration = 0.0;
};

// Per-episode event detection and statistics. A pass is an ownership transfer
// between two distinct agents of one team with no opposing ownership in
// between; an ownership loss is the opposing team taking over (possibly after
// a no-owner gap). Ball out of bounds is tracked separately, not as a loss.
class GameTracker {
public:
    void reset();

    // Call once per control step after step_world with the post-step world.
    // Returns the events registered this step.
    std::vector<GameEvent> update(const WorldState& world,
                                  const StepEvents& step_events,
                                  const OwnershipState& ownership, double dt);

    void finish(Outcome outcome);
    const EpisodeStats& stats() const { return stats_; }
    const OwnershipState& last_ownership() const { return prev_ownership_; }

private:
    OwnershipState prev_ownership_;
    std::optional<std::pair<int, Team>> last_owner_;  // survives no-owner gaps
    EpisodeStats stats_;
};

struct SpawnSpec {
    int n_blue = 1;
    int n_red = 1;
    double field_scale = 1.0;  // scales field, goal and wall rectangle
    double ball_band_lo = 0.0; // fractions of field length from the blue goal line
    double ball_band_hi = 1.0;
};

// Spawns a fresh episode: agents uniform in their own half with headings in
// (-pi, pi], ball in the given longitudinal band, overlaps rejection-resampled.
// Throws if no overlap-free placement is found after bounded retries.
WorldState spawn_episode(const FieldGeometry& nominal_field, const SpawnSpec& spec,
                         Rng& rng);

}  // namespace soccer
