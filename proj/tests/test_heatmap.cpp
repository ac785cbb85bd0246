#include <cmath>

#include "doctest.h"
#include "soccer/heatmap.hpp"
#include "soccer/rules.hpp"

using namespace soccer;

namespace {

PipelineConfig small_cfg() {
    PipelineConfig cfg;
    cfg.net.encoder_hidden = {6};
    cfg.net.encoder_out = 4;
    cfg.net.policy_hidden = {8};
    return cfg;
}

WorldState frozen_world(const PipelineConfig& cfg, uint64_t seed) {
    Rng rng(seed);
    SpawnSpec spec{2, 2, 1.0, 0.4, 0.6};
    return spawn_episode(cfg.field, spec, rng);
}

}  // namespace

TEST_CASE("ball-sweep heatmap has the right shape, finite values, frozen world") {
    PipelineConfig cfg = small_cfg();
    Rng rng(41);
    ActorCritic net = ActorCritic::make(cfg.net, cfg.obs);
    net.init(rng);

    WorldState frozen = frozen_world(cfg, 8);
    WorldState copy = frozen;

    HeatmapSpec spec;
    spec.resolution = 16;
    Heatmap map = value_heatmap(frozen, spec, net, cfg.obs);

    CHECK(map.resolution == 16);
    REQUIRE(map.values.size() == 256);
    for (double v : map.values) CHECK(std::isfinite(v));

    // The input world is untouched.
    CHECK(frozen.ball.position.x == copy.ball.position.x);
    CHECK(frozen.agents[0].position.x == copy.agents[0].position.x);

    // Cells vary across the field (the critic is not constant).
    double lo = map.values[0], hi = map.values[0];
    for (double v : map.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(hi > lo);

    CHECK(!map.to_csv().empty());
}

TEST_CASE("heatmaps are deterministic and sensitive to the sweep target") {
    PipelineConfig cfg = small_cfg();
    Rng rng(42);
    ActorCritic net = ActorCritic::make(cfg.net, cfg.obs);
    net.init(rng);
    WorldState frozen = frozen_world(cfg, 9);

    HeatmapSpec ball_spec;
    ball_spec.resolution = 8;
    Heatmap a = value_heatmap(frozen, ball_spec, net, cfg.obs);
    Heatmap b = value_heatmap(frozen, ball_spec, net, cfg.obs);
    CHECK(a.values == b.values);

    HeatmapSpec agent_spec = ball_spec;
    agent_spec.sweep = HeatmapSweep::Agent;
    agent_spec.agent_id = 1;
    Heatmap c = value_heatmap(frozen, agent_spec, net, cfg.obs);
    CHECK(a.values != c.values);
}

TEST_CASE("invalid heatmap specs are rejected") {
    PipelineConfig cfg = small_cfg();
    Rng rng(43);
    ActorCritic net = ActorCritic::make(cfg.net, cfg.obs);
    net.init(rng);
    WorldState frozen = frozen_world(cfg, 10);

    HeatmapSpec bad;
    bad.resolution = 0;
    CHECK_THROWS_AS(value_heatmap(frozen, bad, net, cfg.obs),
                    std::invalid_argument);

    HeatmapSpec out_of_range;
    out_of_range.value_agent = 99;
    CHECK_THROWS_AS(value_heatmap(frozen, out_of_range, net, cfg.obs),
                    std::invalid_argument);
}
