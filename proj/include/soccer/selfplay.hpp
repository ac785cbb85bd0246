#pragma once

#include <deque>
#include <map>
#include <memory>
#include <vector>

#include "soccer/config.hpp"
#include "soccer/network.hpp"
#include "soccer/rng.hpp"
#include "soccer/world.hpp"

namespace soccer {

constexpr int kBotAdversaryId = 0;

// Rolling per-adversary win-rate windows (trainee perspective).
class WinrateTracker {
public:
    explicit WinrateTracker(int window = 100) : window_(window) {}

    void record(int adversary_id, bool win);
    double rate(int adversary_id) const;
    int count(int adversary_id) const;
    // Mean of the per-adversary window rates over the given ids.
    double average_over(const std::vector<int>& ids) const;
    bool all_have_at_least(const std::vector<int>& ids, int n) const;
    void forget(int adversary_id);

    int window() const { return window_; }

    const std::map<int, std::deque<uint8_t>>& windows() const { return outcomes_; }
    void restore(std::map<int, std::deque<uint8_t>> windows) {
        outcomes_ = std::move(windows);
    }

private:
    int window_;
    std::map<int, std::deque<uint8_t>> outcomes_;
};

// FIFO pool of frozen policy snapshots used as adversaries. Snapshots are
// immutable once stored; the pool never exceeds its capacity.
class SelfPlayPool {
public:
    explicit SelfPlayPool(int capacity = 8) : capacity_(capacity) {}

    // Returns the id assigned to the new snapshot; evicts the oldest when
    // full (the evicted id is reported via evicted, -1 if none).
    int add(const ActorCritic& net, int* evicted = nullptr);

    const ActorCritic* find(int id) const;
    std::shared_ptr<const ActorCritic> find_shared(int id) const;
    std::vector<int> ids() const;
    size_t size() const { return snapshots_.size(); }
    int capacity() const { return capacity_; }

    int next_id() const { return next_id_; }
    void restore(std::vector<std::pair<int, ActorCritic>> snapshots, int next_id);

private:
    int capacity_;
    int next_id_ = 1;
    std::deque<std::pair<int, std::shared_ptr<const ActorCritic>>> snapshots_;
};

// Per-environment curriculum levels, stepped on episode outcomes: win -> +1
// (capped), loss -> -1 (floored), draw unchanged.
struct EnvCurriculum {
    int init_pos_level = 0;
    int field_level = 0;
};

void update_levels(EnvCurriculum& cur, Outcome outcome, Team trainee,
                   int max_init_level, int max_field_level);

// Ball spawn band for a given init-position level: far edge interpolates
// linearly from min_frac of the field length (level 0) to the full field.
double ball_band_far_edge(int level, int max_level, double min_frac);

// Field scale for a given field level: min_scale at level 0 up to 1.
double field_scale_for_level(int level, int max_level, double min_scale);

// Uniform adversary choice over the bot (when included) and all snapshots.
int sample_adversary(const SelfPlayPool& pool, bool include_bot, Rng& rng);

}  // namespace soccer
