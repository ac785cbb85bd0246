#include "doctest.h"
#include "soccer/selfplay.hpp"

using namespace soccer;

namespace {

ActorCritic tiny_net(uint64_t seed) {
    NetworkConfig ncfg;
    ncfg.encoder_hidden = {4};
    ncfg.encoder_out = 2;
    ncfg.policy_hidden = {4};
    ObservationConfig ocfg;
    ActorCritic net = ActorCritic::make(ncfg, ocfg);
    Rng rng(seed);
    net.init(rng);
    return net;
}

}  // namespace

TEST_CASE("winrate tracker windows roll and average per adversary") {
    WinrateTracker tracker(4);
    CHECK(tracker.rate(1) == 0.0);
    CHECK(tracker.count(1) == 0);

    for (bool w : {true, true, false, true}) tracker.record(1, w);
    CHECK(tracker.rate(1) == doctest::Approx(0.75));
    CHECK(tracker.count(1) == 4);

    // Window of 4: the next record evicts the oldest win.
    tracker.record(1, false);
    CHECK(tracker.rate(1) == doctest::Approx(0.5));
    CHECK(tracker.count(1) == 4);

    tracker.record(2, true);
    CHECK(tracker.average_over({1, 2}) == doctest::Approx(0.75));
    CHECK(tracker.all_have_at_least({1, 2}, 1));
    CHECK(!tracker.all_have_at_least({1, 2}, 2));

    tracker.forget(1);
    CHECK(tracker.count(1) == 0);
}

TEST_CASE("snapshot pool is FIFO with stable ids") {
    SelfPlayPool pool(2);
    int ev = -1;
    int id1 = pool.add(tiny_net(1), &ev);
    CHECK(ev == -1);
    int id2 = pool.add(tiny_net(2), &ev);
    CHECK(ev == -1);
    CHECK(id1 != id2);
    CHECK(pool.size() == 2);
    CHECK(pool.find(id1) != nullptr);

    int id3 = pool.add(tiny_net(3), &ev);
    CHECK(ev == id1);  // oldest evicted
    CHECK(pool.size() == 2);
    CHECK(pool.find(id1) == nullptr);
    CHECK(pool.find(id2) != nullptr);
    CHECK(pool.find(id3) != nullptr);

    auto shared = pool.find_shared(id2);
    REQUIRE(shared != nullptr);
    pool.add(tiny_net(4), &ev);  // evicts id2
    CHECK(pool.find(id2) == nullptr);
    CHECK(shared->finite());  // borrowed snapshot outlives eviction
}

TEST_CASE("curriculum levels step with outcomes and clamp") {
    EnvCurriculum cur;
    update_levels(cur, Outcome::BlueWin, Team::Blue, 4, 4);
    CHECK(cur.init_pos_level == 1);
    CHECK(cur.field_level == 1);
    update_levels(cur, Outcome::Timeout, Team::Blue, 4, 4);
    CHECK(cur.init_pos_level == 1);  // draws leave levels unchanged
    update_levels(cur, Outcome::RedWin, Team::Blue, 4, 4);
    CHECK(cur.init_pos_level == 0);
    update_levels(cur, Outcome::RedWin, Team::Blue, 4, 4);
    CHECK(cur.init_pos_level == 0);  // floored
    for (int i = 0; i < 6; ++i) update_levels(cur, Outcome::BlueWin, Team::Blue, 4, 4);
    CHECK(cur.init_pos_level == 4);  // capped

    // A red trainee advances on red wins.
    EnvCurriculum red;
    update_levels(red, Outcome::RedWin, Team::Red, 4, 4);
    CHECK(red.init_pos_level == 1);
}

TEST_CASE("curriculum schedules interpolate linearly") {
    CHECK(ball_band_far_edge(0, 4, 0.25) == doctest::Approx(0.25));
    CHECK(ball_band_far_edge(4, 4, 0.25) == doctest::Approx(1.0));
    CHECK(ball_band_far_edge(2, 4, 0.25) == doctest::Approx(0.625));
    CHECK(ball_band_far_edge(9, 4, 0.25) == doctest::Approx(1.0));  // clamped

    CHECK(field_scale_for_level(0, 4, 0.6) == doctest::Approx(0.6));
    CHECK(field_scale_for_level(4, 4, 0.6) == doctest::Approx(1.0));
    CHECK(field_scale_for_level(1, 4, 0.6) == doctest::Approx(0.7));
}

TEST_CASE("adversary sampling covers the bot and all snapshots") {
    SelfPlayPool pool(4);
    int a = pool.add(tiny_net(1));
    int b = pool.add(tiny_net(2));
    Rng rng(99);

    bool saw_bot = false, saw_a = false, saw_b = false;
    for (int i = 0; i < 200; ++i) {
        int id = sample_adversary(pool, true, rng);
        if (id == kBotAdversaryId) saw_bot = true;
        else if (id == a) saw_a = true;
        else if (id == b) saw_b = true;
        else FAIL("unexpected adversary id");
    }
    CHECK(saw_bot);
    CHECK(saw_a);
    CHECK(saw_b);

    // Without the bot, only snapshots come back.
    for (int i = 0; i < 50; ++i)
        CHECK(sample_adversary(pool, false, rng) != kBotAdversaryId);

    // An empty pool falls back to the bot even when excluded.
    SelfPlayPool empty(4);
    CHECK(sample_adversary(empty, false, rng) == kBotAdversaryId);
}
