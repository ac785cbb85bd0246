#pragma once

#include <string>

#include "soccer/config.hpp"
#include "soccer/network.hpp"

namespace soccer {

class Trainer;

// Little-endian binary checkpoint: magic, format version, named dimension
// table, then 32-bit float parameter blocks in declared order, the dense-
// reward flag, and (for trainer checkpoints) optimizer/curriculum/self-play
// state including serialized RNG streams.

void save_policy_checkpoint(const std::string& path, const ActorCritic& net,
                            bool dense_active);

struct PolicyCheckpoint {
    ActorCritic net;
    bool dense_active = true;
};

// Loads the parameter blocks into a network shaped by `cfg`; dimension or
// magic/version mismatches raise std::runtime_error with diagnostics.
PolicyCheckpoint load_policy_checkpoint(const std::string& path,
                                        const PipelineConfig& cfg);

void save_trainer_checkpoint(const std::string& path, const Trainer& trainer);
void load_trainer_checkpoint(const std::string& path, Trainer& trainer);

}  // namespace soccer
