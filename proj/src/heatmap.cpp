#include "soccer/heatmap.hpp"

#include <sstream>
#include <stdexcept>

#include "soccer/observation.hpp"

namespace soccer {

std::string Heatmap::to_csv() const {
    std::ostringstream os;
    os.precision(10);
    for (int r = 0; r < resolution; ++r) {
        for (int c = 0; c < resolution; ++c) {
            if (c) os << ',';
            os << at(r, c);
        }
        os << '\n';
    }
    return os.str();
}

Heatmap value_heatmap(const WorldState& frozen, const HeatmapSpec& spec,
                      const ActorCritic& net, const ObservationConfig& obs_cfg) {
    if (spec.resolution < 1) throw std::invalid_argument("heatmap: resolution < 1");
    if (spec.value_agent < 0 ||
        spec.value_agent >= static_cast<int>(frozen.agents.size()))
        throw std::invalid_argument("heatmap: value_agent out of range");
    if (spec.sweep == HeatmapSweep::Agent &&
        (spec.agent_id < 0 ||
         spec.agent_id >= static_cast<int>(frozen.agents.size())))
        throw std::invalid_argument("heatmap: agent_id out of range");

    Heatmap map;
    map.resolution = spec.resolution;
    map.values.resize(static_cast<size_t>(spec.resolution) * spec.resolution);

    WorldState world = frozen;
    HistoryBuffer history;
    history.reset(world.agents.size(), obs_cfg.history_len);
    Rng unused_rng;  // critic observations take no noise

    const double hl = world.field.half_length();
    const double hw = world.field.half_width();
    for (int r = 0; r < spec.resolution; ++r) {
        double y = -hw + (r + 0.5) * (2.0 * hw / spec.resolution);
        for (int c = 0; c < spec.resolution; ++c) {
            double x = -hl + (c + 0.5) * (2.0 * hl / spec.resolution);
            if (spec.sweep == HeatmapSweep::Ball)
                world.ball.position = {x, y};
            else
                world.agents[spec.agent_id].position = {x, y};
            ObservationBundle obs =
                build_observation(world, spec.value_agent, history, obs_cfg,
                                  ObsRole::Critic, unused_rng);
            map.values[static_cast<size_t>(r) * spec.resolution + c] =
                value_forward(obs, net, nullptr);
        }
    }
    return map;
}

}  // namespace soccer
