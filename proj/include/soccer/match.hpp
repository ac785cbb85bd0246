#pragma once

#include <string>
#include <vector>

#include "soccer/config.hpp"
#include "soccer/network.hpp"
#include "soccer/rules.hpp"

namespace soccer {

// One side of a match: a policy network (mode actions) or, when net is null,
// the scripted bot.
struct MatchSide {
    const ActorCritic* net = nullptr;
    bool deterministic = true;  // sample from the beta heads when false
};

struct MatchReport {
    int episodes = 0;
    int blue_wins = 0;
    int red_wins = 0;
    int draws = 0;
    double sim_time = 0.0;

    double blue_win_rate = 0.0;
    double red_win_rate = 0.0;
    double draw_rate = 0.0;
    // Ball ownership shares of total simulated time (the remainder is
    // uncontested time).
    double blue_ownership_share = 0.0;
    double red_ownership_share = 0.0;
    double mean_passes_blue = 0.0;
    double mean_passes_red = 0.0;
    double mean_losses_blue = 0.0;
    double mean_losses_red = 0.0;
    double mean_episode_duration = 0.0;

    std::vector<EpisodeStats> episode_stats;

    std::string summary() const;
};

// Plays fixed-length episodes under the scenario's spawn band until the
// cumulative simulated time reaches scenario.duration. Deterministic in the
// seed.
MatchReport run_match(const PipelineConfig& cfg, const ScenarioConfig& scenario,
                      const MatchSide& blue, const MatchSide& red,
                      uint64_t seed);

}  // namespace soccer
