#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "soccer/config.hpp"
#include "soccer/rules.hpp"
#include "soccer/world.hpp"

namespace soccer {

// JSONL episode log: a header line with the initial world, then one line per
// control step carrying the issued actions and the post-step state. The state
// snapshots make logs replayable and bit-checkable.
class TrajectoryWriter {
public:
    TrajectoryWriter(const std::string& path, const WorldState& initial,
                     const SimConfig& sim);

    void record_step(const std::vector<ActionCommand>& actions,
                     const WorldState& post_step, const StepEvents& events,
                     const OwnershipState& ownership);

    void finish(Outcome outcome);

private:
    std::ofstream os_;
};

struct ReplayResult {
    bool ok = false;
    int steps = 0;
    std::string error;  // first mismatch or parse problem
};

// Re-simulates the logged episode from its initial state with the logged
// actions and compares every post-step state bit-for-bit.
ReplayResult replay_trajectory(const std::string& path);

}  // namespace soccer
