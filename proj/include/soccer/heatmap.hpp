#pragma once

#include <string>
#include <vector>

#include "soccer/config.hpp"
#include "soccer/network.hpp"

namespace soccer {

enum class HeatmapSweep : uint8_t { Ball, Agent };

struct HeatmapSpec {
    int resolution = 80;          // cells per axis
    HeatmapSweep sweep = HeatmapSweep::Ball;
    int agent_id = 0;             // swept agent when sweep == Agent
    int value_agent = 0;          // critic is evaluated from this agent's view
};

struct Heatmap {
    int resolution = 0;
    std::vector<double> values;  // row-major, rows = y from -W/2 to +W/2

    double at(int row, int col) const {
        return values[static_cast<size_t>(row) * resolution + col];
    }
    std::string to_csv() const;
};

// Critic value landscape over a frozen world: the swept entity (ball or one
// agent) is moved across a resolution x resolution grid of cell centers
// spanning the field; everything else stays fixed. The input world is not
// modified.
Heatmap value_heatmap(const WorldState& frozen, const HeatmapSpec& spec,
                      const ActorCritic& net, const ObservationConfig& obs_cfg);

}  // namespace soccer
