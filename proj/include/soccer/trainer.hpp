#pragma once

#include <string>
#include <vector>

#include "soccer/config.hpp"
#include "soccer/ppo.hpp"
#include "soccer/runner.hpp"
#include "soccer/selfplay.hpp"

namespace soccer {

struct IterationMetrics {
    int iteration = 0;
    size_t samples = 0;
    PpoMetrics ppo;
    int episodes_finished = 0;
    double winrate_avg = 0.0;  // mean over current adversaries' windows
    double mean_init_level = 0.0;
    double mean_field_level = 0.0;
    bool dense_active = true;
    int pool_size = 0;
    bool promoted = false;
};

// PPO self-play training over a batch of environments with the curriculum
// and adversary-pool bookkeeping.
class Trainer {
public:
    Trainer(const PipelineConfig& cfg, uint64_t seed);

    IterationMetrics iterate();
    int iteration() const { return iteration_; }

    const ActorCritic& net() const { return net_; }
    ActorCritic& net() { return net_; }
    const RewardConfig& reward_config() const { return reward_; }
    const SelfPlayPool& pool() const { return pool_; }
    const WinrateTracker& tracker() const { return tracker_; }
    const PipelineConfig& config() const { return cfg_; }
    const std::vector<EnvInstance>& envs() const { return envs_; }

    void save(const std::string& path) const;
    void load(const std::string& path);

    static std::string metrics_csv_header();
    static std::string metrics_csv_row(const IterationMetrics& m);

private:
    friend struct TrainerCheckpointAccess;

    void ensure_env_initialized(int env_idx);
    void reset_env_episode(EnvInstance& env);
    void collect(RolloutBuffer& buffer, int* episodes, int* wins);
    std::vector<int> adversary_ids() const;
    void maybe_promote(IterationMetrics& m);

    PipelineConfig cfg_;
    RewardConfig reward_;
    ActorCritic net_;
    Adam opt_;
    SelfPlayPool pool_;
    WinrateTracker tracker_;
    std::vector<EnvInstance> envs_;
    std::vector<std::shared_ptr<const ActorCritic>> env_adversary_;
    std::vector<uint8_t> env_started_;
    Rng update_rng_;
    int iteration_ = 0;
    bool dense_milestone_hit_ = false;
};

}  // namespace soccer
