#pragma once

#include <span>
#include <vector>

#include "soccer/config.hpp"
#include "soccer/rng.hpp"
#include "soccer/world.hpp"

namespace soccer {

enum class ObsRole : uint8_t { Actor, Critic };

struct ObservationBundle {
    std::vector<double> local;      // local_dim
    std::vector<double> teammates;  // n_max x entity_dim, row-major
    std::vector<double> opponents;  // n_max x entity_dim, row-major
    std::vector<uint8_t> teammate_mask;
    std::vector<uint8_t> opponent_mask;

    bool operator==(const ObservationBundle&) const = default;
};

// Rolling world-frame pose history per agent, owned per environment instance.
// Slots older than the episode start are invalid (their observation entries
// read as zeros).
class HistoryBuffer {
public:
    void reset(size_t n_agents, int history_len);
    void push(const WorldState& world);

    struct PastPose {
        Vec2 position;
        double heading;
        bool valid;
    };
    // k = 1 .. history_len-1 steps into the past.
    PastPose past(int agent, int k) const;

private:
    int depth_ = 1;
    size_t n_agents_ = 0;
    int count_ = 0;  // pushes since reset
    std::vector<PastPose> slots_;  // ring buffer, depth_ frames
    int head_ = 0;
};

// Adds independent uniform noise in [-m, m] to each entry.
void inject_noise(std::span<double> values, double magnitude, Rng& rng);

// Builds the ego observation: normalized local vector plus the n_max closest
// teammate/opponent entity rows with pose history, everything expressed from
// the ego agent's perspective. Actor observations are perturbed per-group;
// critic observations are noise-free.
ObservationBundle build_observation(const WorldState& world, int agent_id,
                                    const HistoryBuffer& history,
                                    const ObservationConfig& cfg, ObsRole role,
                                    Rng& rng);

}  // namespace soccer
