#include <cmath>

#include "doctest.h"
#include "soccer/rules.hpp"

using namespace soccer;

namespace {

WorldState base_world(int n_blue, int n_red) {
    WorldState w;
    for (int i = 0; i < n_blue; ++i) {
        AgentState a;
        a.team = Team::Blue;
        a.position = {-3.0 - i, 2.0};
        w.agents.push_back(a);
    }
    for (int i = 0; i < n_red; ++i) {
        AgentState a;
        a.team = Team::Red;
        a.position = {3.0 + i, 2.0};
        w.agents.push_back(a);
    }
    w.ball.position = {0.0, 0.0};
    return w;
}

StepEvents no_events(const WorldState& w) {
    StepEvents e;
    e.collision.assign(w.agents.size(), 0);
    return e;
}

}  // namespace

TEST_CASE("ownership requires proximity, uniqueness per team") {
    WorldState w = base_world(2, 2);

    SUBCASE("no one near the ball: no owner") {
        OwnershipState o = assign_ownership(w);
        CHECK(!o.owner_agent.has_value());
    }

    SUBCASE("one blue agent inside the radius owns") {
        w.agents[0].position = {0.2, 0.0};  // dist 0.2 < 0.25
        OwnershipState o = assign_ownership(w);
        REQUIRE(o.owner_agent.has_value());
        CHECK(*o.owner_agent == 0);
        CHECK(*o.owner_team == Team::Blue);
    }

    SUBCASE("closest of several teammates wins") {
        w.agents[0].position = {0.2, 0.0};
        w.agents[1].position = {0.1, 0.0};
        OwnershipState o = assign_ownership(w);
        REQUIRE(o.owner_agent.has_value());
        CHECK(*o.owner_agent == 1);
    }

    SUBCASE("an opponent in range voids ownership") {
        w.agents[0].position = {0.2, 0.0};
        w.agents[2].position = {-0.2, 0.0};  // red, also within 0.25
        OwnershipState o = assign_ownership(w);
        CHECK(!o.owner_agent.has_value());
    }

    SUBCASE("agent exactly at the radius still counts") {
        w.agents[0].position = {0.25, 0.0};
        OwnershipState o = assign_ownership(w);
        CHECK(o.owner_agent.has_value());
    }

    SUBCASE("equidistant teammates tie to the lowest index") {
        w.agents[0].position = {0.2, 0.0};
        w.agents[1].position = {-0.2, 0.0};
        OwnershipState o = assign_ownership(w);
        REQUIRE(o.owner_agent.has_value());
        CHECK(*o.owner_agent == 0);
    }

    SUBCASE("inactive agents are ignored") {
        w.agents[0].position = {0.2, 0.0};
        w.agents[0].active = false;
        OwnershipState o = assign_ownership(w);
        CHECK(!o.owner_agent.has_value());
    }
}

TEST_CASE("a pass survives a short no-owner gap") {
    WorldState w = base_world(2, 1);
    GameTracker tracker;
    tracker.reset();
    double dt = 0.1;

    // Agent 0 owns.
    w.agents[0].position = {0.1, 0.0};
    w.sim_time = 0.1;
    auto ev = tracker.update(w, no_events(w), assign_ownership(w), dt);
    CHECK(ev.empty());

    // Ball in flight: nobody owns for two steps.
    w.agents[0].position = {-3.0, 2.0};
    for (int i = 0; i < 2; ++i) {
        w.sim_time += dt;
        ev = tracker.update(w, no_events(w), assign_ownership(w), dt);
        CHECK(ev.empty());
    }

    // Agent 1 receives.
    w.agents[1].position = {0.1, 0.0};
    w.sim_time += dt;
    ev = tracker.update(w, no_events(w), assign_ownership(w), dt);
    REQUIRE(ev.size() == 1);
    CHECK(ev[0].kind == EventKind::Pass);
    CHECK(ev[0].team == Team::Blue);
    CHECK(ev[0].agent_a == 0);
    CHECK(ev[0].agent_b == 1);
    CHECK(tracker.stats().passes_blue == 1);
    CHECK(tracker.stats().ownership_losses_blue == 0);
}

TEST_CASE("opponent takeover counts as an ownership loss for the former team") {
    WorldState w = base_world(1, 1);
    GameTracker tracker;
    tracker.reset();
    double dt = 0.1;

    w.agents[0].position = {0.1, 0.0};
    w.sim_time = 0.1;
    tracker.update(w, no_events(w), assign_ownership(w), dt);

    w.agents[0].position = {-3.0, 2.0};
    w.agents[1].position = {0.1, 0.0};
    w.sim_time += dt;
    auto ev = tracker.update(w, no_events(w), assign_ownership(w), dt);
    REQUIRE(ev.size() == 1);
    CHECK(ev[0].kind == EventKind::OwnershipLoss);
    CHECK(ev[0].team == Team::Blue);
    CHECK(ev[0].agent_a == 0);
    CHECK(tracker.stats().ownership_losses_blue == 1);
    CHECK(tracker.stats().passes_blue == 0);
}

TEST_CASE("re-acquiring the ball yourself is neither pass nor loss") {
    WorldState w = base_world(2, 1);
    GameTracker tracker;
    tracker.reset();
    double dt = 0.1;

    w.agents[0].position = {0.1, 0.0};
    tracker.update(w, no_events(w), assign_ownership(w), dt);
    w.agents[0].position = {-3.0, 2.0};
    tracker.update(w, no_events(w), assign_ownership(w), dt);
    w.agents[0].position = {0.1, 0.0};
    auto ev = tracker.update(w, no_events(w), assign_ownership(w), dt);
    CHECK(ev.empty());
    CHECK(tracker.stats().passes_blue == 0);
}

TEST_CASE("ownership time accumulates per team") {
    WorldState w = base_world(1, 1);
    GameTracker tracker;
    tracker.reset();
    double dt = 0.1;

    w.agents[0].position = {0.1, 0.0};
    for (int i = 0; i < 5; ++i) tracker.update(w, no_events(w), assign_ownership(w), dt);
    CHECK(tracker.stats().ownership_time_blue == doctest::Approx(0.5));
    CHECK(tracker.stats().ownership_time_red == 0.0);
}

TEST_CASE("goal and collision step events are forwarded") {
    WorldState w = base_world(1, 1);
    GameTracker tracker;
    tracker.reset();
    StepEvents se = no_events(w);
    se.goal = true;
    se.goal_team = Team::Red;
    se.collision[1] = 1;
    auto ev = tracker.update(w, se, assign_ownership(w), 0.1);
    REQUIRE(ev.size() == 2);
    CHECK(ev[0].kind == EventKind::Goal);
    CHECK(ev[0].team == Team::Red);
    CHECK(ev[1].kind == EventKind::Collision);
    CHECK(ev[1].agent_a == 1);
}

TEST_CASE("spawn respects halves, bands and separations") {
    FieldGeometry nominal;
    Rng rng(7);

    for (int trial = 0; trial < 50; ++trial) {
        SpawnSpec spec;
        spec.n_blue = 3;
        spec.n_red = 3;
        spec.field_scale = trial % 2 ? 1.0 : 0.6;
        spec.ball_band_lo = 0.25;
        spec.ball_band_hi = 0.75;
        WorldState w = spawn_episode(nominal, spec, rng);

        CHECK(w.field.field_length == doctest::Approx(9.0 * spec.field_scale));
        CHECK(w.field.goal_width == doctest::Approx(1.5 * spec.field_scale));
        REQUIRE(w.agents.size() == 6);
        for (int i = 0; i < 6; ++i) {
            const AgentState& a = w.agents[i];
            CHECK(a.team == (i < 3 ? Team::Blue : Team::Red));
            if (a.team == Team::Blue) CHECK(a.position.x <= 0.0);
            else CHECK(a.position.x >= 0.0);
            CHECK(std::abs(a.position.y) <= w.field.half_width());
            CHECK(a.heading <= 3.14159265358979323846);
            CHECK(a.heading > -3.14159265358979323846);
            for (int j = i + 1; j < 6; ++j) {
                double d = (w.agents[j].position - a.position).norm();
                CHECK(d >= 2.0 * w.field.agent_radius);
            }
        }
        // Ball inside the band (fractions of length from the blue goal line).
        double frac = (w.ball.position.x + w.field.half_length()) / w.field.field_length;
        CHECK(frac >= 0.25 - 1e-9);
        CHECK(frac <= 0.75 + 1e-9);
    }
}

TEST_CASE("spawn rejects empty teams and impossible densities") {
    FieldGeometry nominal;
    Rng rng(3);
    SpawnSpec bad;
    bad.n_blue = 0;
    CHECK_THROWS(spawn_episode(nominal, bad, rng));

    SpawnSpec crowd;
    crowd.n_blue = 3;
    crowd.n_red = 3;
    crowd.field_scale = 0.04;  // each half shrinks below three agent footprints
    CHECK_THROWS(spawn_episode(nominal, crowd, rng));
}
